//! Named lattices and the product / linear-sum combinators.
//!
//! Numbering is documented per constructor. Products number `(i, j)` as
//! `i * |right| + j`, so the left factor is the most significant digit.

use super::FiniteLattice;
use crate::error::{Error, Result};

/// The `k`-element chain `0 < 1 < ... < k-1`.
pub fn chain(k: usize) -> FiniteLattice {
    assert!(k >= 1, "chain needs at least one element");
    let covers: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
    FiniteLattice::from_covers(k, &covers).expect("chain is a lattice")
}

/// `2 x C_k`; element `(i, j)` is `i * k + j`.
pub fn two_by_chain(k: usize) -> FiniteLattice {
    product(&chain(2), &chain(k)).expect("2 x C_k is a lattice")
}

/// The eight-element boolean algebra `2 x 2 x 2`, numbered by bitmask.
pub fn cube3() -> FiniteLattice {
    boolean(3)
}

/// The boolean algebra `2^k`; element indices are bitmasks (bit `k-1` is the
/// leftmost factor).
pub fn boolean(k: usize) -> FiniteLattice {
    assert!(k < 12, "boolean({k}) is too large");
    let n = 1usize << k;
    let names = (0..n).map(|m| format!("{m:0width$b}", width = k.max(1))).collect();
    FiniteLattice::from_order(n, |x, y| x & y == x).expect("boolean algebra is a lattice").with_names(names)
}

/// The diamond: bottom `0`, atoms `1, 2, 3`, top `4`.
pub fn m3() -> FiniteLattice {
    FiniteLattice::from_covers(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])
        .expect("M3 is a lattice")
        .with_names(["0", "a", "b", "c", "1"].map(String::from).to_vec())
}

/// The pentagon `{0, p, q, r, 1}` with `q < r` and `p` incomparable to both:
/// indices `0 = 0, 1 = p, 2 = q, 3 = r, 4 = 1`.
pub fn n5() -> FiniteLattice {
    FiniteLattice::from_covers(5, &[(0, 1), (0, 2), (2, 3), (1, 4), (3, 4)])
        .expect("N5 is a lattice")
        .with_names(["0", "p", "q", "r", "1"].map(String::from).to_vec())
}

/// Direct product with lexicographic numbering `(i, j) -> i * |b| + j`.
pub fn product(a: &FiniteLattice, b: &FiniteLattice) -> Result<FiniteLattice> {
    let (na, nb) = (a.len(), b.len());
    let n = na.checked_mul(nb).ok_or(Error::SizeCap { n: usize::MAX, cap: super::DEFAULT_MAX_N })?;
    if n > super::DEFAULT_MAX_N {
        return Err(Error::SizeCap { n, cap: super::DEFAULT_MAX_N });
    }
    let names = (0..n).map(|x| format!("({},{})", a.name(x / nb), b.name(x % nb))).collect();
    Ok(FiniteLattice::from_order(n, |x, y| a.leq(x / nb, y / nb) && b.leq(x % nb, y % nb))?.with_names(names))
}

/// Linear sum: every element of `a` lies below every element of `b`.
/// Elements of `a` keep their indices; `b`'s are shifted by `|a|`.
pub fn linear_sum(a: &FiniteLattice, b: &FiniteLattice) -> Result<FiniteLattice> {
    let na = a.len();
    let n = na + b.len();
    if n > super::DEFAULT_MAX_N {
        return Err(Error::SizeCap { n, cap: super::DEFAULT_MAX_N });
    }
    let mut covers: Vec<(usize, usize)> = a.covers().to_vec();
    covers.extend(b.covers().iter().map(|&(x, y)| (x + na, y + na)));
    covers.push((a.top(), b.bottom() + na));
    let out = FiniteLattice::from_covers(n, &covers)?;
    Ok(match (a.names(), b.names()) {
        (None, None) => out,
        _ => out.with_names(a.elements().map(|x| a.name(x)).chain(b.elements().map(|x| b.name(x))).collect()),
    })
}

/// A lattice specification understood by [`construct`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Named {
    Chain(usize),
    TwoByChain(usize),
    Cube3,
    M3,
    N5,
    Boolean(usize),
    Product(Box<Named>, Box<Named>),
    LinearSum(Box<Named>, Box<Named>),
}

pub fn construct(spec: &Named) -> Result<FiniteLattice> {
    Ok(match spec {
        Named::Chain(k) => {
            check_positive(*k)?;
            chain(*k)
        }
        Named::TwoByChain(k) => {
            check_positive(*k)?;
            two_by_chain(*k)
        }
        Named::Cube3 => cube3(),
        Named::M3 => m3(),
        Named::N5 => n5(),
        Named::Boolean(k) => {
            if *k >= 12 {
                return Err(Error::SizeCap { n: 1 << k.min(&63), cap: super::DEFAULT_MAX_N });
            }
            boolean(*k)
        }
        Named::Product(a, b) => product(&construct(a)?, &construct(b)?)?,
        Named::LinearSum(a, b) => linear_sum(&construct(a)?, &construct(b)?)?,
    })
}

fn check_positive(k: usize) -> Result<()> {
    if k == 0 {
        Err(Error::Empty)
    } else if k > super::DEFAULT_MAX_N {
        Err(Error::SizeCap { n: k, cap: super::DEFAULT_MAX_N })
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(cube3().len(), 8);
        assert_eq!(two_by_chain(4).len(), 8);
        assert_eq!(boolean(4).len(), 16);
        assert_eq!(m3().len(), 5);
    }

    #[test]
    fn linear_sum_of_points_is_a_chain() {
        let s = linear_sum(&chain(1), &chain(1)).unwrap();
        assert!(crate::lattice::is_isomorphic(&s, &chain(2)).is_some());
    }

    #[test]
    fn product_numbering_is_lexicographic() {
        let p = product(&chain(2), &chain(3)).unwrap();
        // (0,2) = 2 and (1,0) = 3 are incomparable; (0,1) = 1 <= (1,1) = 4
        assert!(p.incomparable(2, 3));
        assert!(p.leq(1, 4));
        assert_eq!(p.join(2, 3), 5);
        assert_eq!(p.name(4), "(1,1)");
    }

    #[test]
    fn construct_nested() {
        let spec = Named::LinearSum(Box::new(Named::Cube3), Box::new(Named::Chain(2)));
        let l = construct(&spec).unwrap();
        assert_eq!(l.len(), 10);
        assert!(matches!(construct(&Named::Chain(0)), Err(Error::Empty)));
    }
}
