//! Jónsson's D-sequence.
//!
//! A join cover of `x` is a set `X` with `x <= V X`; it is nontrivial when no
//! member of `X` is above `x`. `X' << X` (refinement) when every member of
//! `X'` is below some member of `X`. `D_0` is the set of join-prime elements,
//! and `x` belongs to `D_{k+1}` when every nontrivial join cover of `x`
//! refines to a join cover contained in `D_k`.
//!
//! In a finite lattice every nontrivial join cover refines to one that is
//! minimal under `<<`, and minimal covers are antichains of
//! join-irreducibles. It is therefore enough to test those: `x` is in
//! `D_{k+1}` iff each of its minimal nontrivial join covers lies in `D_k`.

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::lattice::FiniteLattice;

/// Every member of `xp` lies below some member of `x`.
pub fn refines(l: &FiniteLattice, xp: &[usize], x: &[usize]) -> bool {
    xp.iter().all(|&p| x.iter().any(|&q| l.leq(p, q)))
}

/// Join-prime: `x <= V X` forces `x <= y` for some `y` in `X`. Equivalently
/// `x` is not below the join of everything that is not above it (vacuously
/// true for the bottom, where that set is empty).
pub fn is_join_prime(l: &FiniteLattice, x: usize) -> bool {
    let rest: Vec<usize> = l.elements().filter(|&y| !l.leq(x, y)).collect();
    rest.is_empty() || !l.leq(x, l.join_all(rest))
}

/// The minimal nontrivial join covers of `x`, each sorted ascending, listed
/// in lexicographic order.
pub fn min_join_covers(l: &FiniteLattice, x: usize) -> Vec<Vec<usize>> {
    let candidates: Vec<usize> = l.elements().filter(|&j| l.lower_covers(j).len() == 1 && !l.leq(x, j)).collect();
    let mut covers = Vec::new();
    let mut current = Vec::new();
    antichain_covers(l, x, &candidates, 0, &mut current, &mut covers);
    let mut minimal: Vec<Vec<usize>> =
        covers.iter().filter(|m| !covers.iter().any(|y| y != *m && refines(l, y, m))).cloned().collect();
    minimal.sort();
    minimal
}

fn antichain_covers(
    l: &FiniteLattice,
    x: usize,
    cand: &[usize],
    from: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if !current.is_empty() && l.leq(x, l.join_all(current.iter().copied())) {
        out.push(current.clone());
    }
    for i in from..cand.len() {
        let y = cand[i];
        if current.iter().all(|&c| l.incomparable(c, y)) {
            current.push(y);
            antichain_covers(l, x, cand, i + 1, current, out);
            current.pop();
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Quadrant {
    /// `L = D(L)`.
    pub d: bool,
    /// `L = D^d(L)`.
    pub dual: bool,
}

impl std::fmt::Display for Quadrant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = |b: bool| if b { "=" } else { "≠" };
        write!(f, "({},{})", s(self.d), s(self.dual))
    }
}

impl Serialize for Quadrant {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DSequence {
    pub layers: Vec<Vec<usize>>,
    pub stabilized_at: usize,
    pub d_full: Vec<usize>,
    pub dual_layers: Vec<Vec<usize>>,
    pub dual_full: Vec<usize>,
    pub quadrant: Quadrant,
}

/// `D_0 ⊆ D_1 ⊆ ...` up to and including the first repeated layer's
/// predecessor (so the last layer is `D(L)`).
pub fn d_layers(l: &FiniteLattice) -> Vec<Vec<usize>> {
    let covers: Vec<Vec<Vec<usize>>> = l.elements().into_par_iter().map(|x| min_join_covers(l, x)).collect();
    let mut member: Vec<bool> = l.elements().map(|x| is_join_prime(l, x)).collect();
    let mut layers = vec![collect(&member)];
    loop {
        let next: Vec<bool> =
            l.elements().map(|x| member[x] || covers[x].iter().all(|c| c.iter().all(|&y| member[y]))).collect();
        if next == member {
            return layers;
        }
        layers.push(collect(&next));
        member = next;
    }
}

fn collect(member: &[bool]) -> Vec<usize> {
    member.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| i).collect()
}

pub fn d_sequence(l: &FiniteLattice) -> DSequence {
    let layers = d_layers(l);
    let dual_layers = d_layers(&l.dual());
    let d_full = layers.last().cloned().unwrap_or_default();
    let dual_full = dual_layers.last().cloned().unwrap_or_default();
    let quadrant = Quadrant { d: d_full.len() == l.len(), dual: dual_full.len() == l.len() };
    DSequence { stabilized_at: layers.len() - 1, layers, d_full, dual_layers, dual_full, quadrant }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{chain, cube3, m3, n5, two_by_chain};

    /// D_{k+1} straight from the definition: every nontrivial join cover
    /// (any subset) refines to a cover inside D_k.
    fn oracle_layers(l: &FiniteLattice) -> Vec<Vec<usize>> {
        let n = l.len();
        let subsets: Vec<Vec<usize>> = (1u32..1 << n).map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect()).collect();
        let prime = |x: usize| {
            subsets.iter().all(|s| !l.leq(x, l.join_all(s.iter().copied())) || s.iter().any(|&y| l.leq(x, y)))
        };
        let mut d: Vec<bool> = (0..n).map(prime).collect();
        let mut layers = vec![collect(&d)];
        loop {
            let next: Vec<bool> = (0..n)
                .map(|x| {
                    subsets.iter().all(|s| {
                        let nontrivial = l.leq(x, l.join_all(s.iter().copied())) && s.iter().all(|&y| !l.leq(x, y));
                        // the largest refinement inside D_k is everything in D_k below a member
                        let refined = (0..n).filter(|&e| d[e] && s.iter().any(|&y| l.leq(e, y)));
                        !nontrivial || l.leq(x, l.join_all(refined))
                    })
                })
                .collect();
            if next == d {
                return layers;
            }
            layers.push(collect(&next));
            d = next;
        }
    }

    #[test]
    fn covers_examples() {
        assert_eq!(min_join_covers(&m3(), 1), vec![vec![2, 3]]);
        assert!(min_join_covers(&chain(4), 2).is_empty());
        assert_eq!(min_join_covers(&n5(), 3), vec![vec![1, 2]]);
    }

    #[test]
    fn refinement() {
        let l = n5();
        assert!(refines(&l, &[1, 2], &[1, 3]));
        assert!(refines(&l, &[1, 3], &[1, 3]));
        assert!(!refines(&l, &[4], &[1]));
    }

    #[test]
    fn d_of_m3_and_n5() {
        let s = d_sequence(&m3());
        assert_eq!(s.d_full, vec![0]);
        assert_eq!(s.quadrant.to_string(), "(≠,≠)");
        let s = d_sequence(&n5());
        assert_eq!(s.layers[0], vec![0, 1, 2]);
        assert_eq!(s.layers[1], vec![0, 1, 2, 3, 4]);
        assert_eq!(s.quadrant.to_string(), "(=,=)");
    }

    #[test]
    fn matches_definition_oracle() {
        for l in [m3(), n5(), cube3(), two_by_chain(3), chain(3), crate::subalgebra::flp_nine()] {
            assert_eq!(d_layers(&l), oracle_layers(&l));
        }
    }

    #[test]
    fn dual_of_dual() {
        let l = n5();
        let s = d_sequence(&l);
        let t = d_sequence(&l.dual());
        assert_eq!(s.dual_full, t.d_full);
        assert_eq!(s.d_full, t.dual_full);
    }
}
