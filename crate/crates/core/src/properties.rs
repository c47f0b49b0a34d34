//! Instance checkers for lattice laws and forbidden sublattices.
//!
//! The laws, with witnesses reported as the lexicographically least
//! violating tuple:
//!
//! * modular: `a <= c` implies `a + bc = (a + b)c`
//! * distributive: `a(b + c) = ab + ac`
//! * SD-join: `a + b = a + c` implies `a + b = a + bc`
//! * SD-meet: `ab = ac` implies `ab = a(b + c)`
//! * Whitman (W): `ab <= c + d` implies `a <= c + d`, `b <= c + d`,
//!   `ab <= c` or `ab <= d`

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{m3, n5, FiniteLattice};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub property: String,
    pub verdict: bool,
    pub witness: Option<Vec<usize>>,
}

impl PropertyReport {
    fn law(property: &str, witness: Option<Vec<usize>>) -> Self {
        Self { property: property.to_string(), verdict: witness.is_none(), witness }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Join,
    Meet,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pattern {
    M3,
    N5,
}

impl Pattern {
    pub fn lattice(self) -> FiniteLattice {
        match self {
            Pattern::M3 => m3(),
            Pattern::N5 => n5(),
        }
    }
}

fn first_triple(l: &FiniteLattice, bad: impl Fn(usize, usize, usize) -> bool) -> Option<Vec<usize>> {
    for a in l.elements() {
        for b in l.elements() {
            for c in l.elements() {
                if bad(a, b, c) {
                    return Some(vec![a, b, c]);
                }
            }
        }
    }
    None
}

pub fn modular_witness(l: &FiniteLattice) -> Option<Vec<usize>> {
    first_triple(l, |a, b, c| l.leq(a, c) && l.join(a, l.meet(b, c)) != l.meet(l.join(a, b), c))
}

pub fn distributive_witness(l: &FiniteLattice) -> Option<Vec<usize>> {
    first_triple(l, |a, b, c| l.meet(a, l.join(b, c)) != l.join(l.meet(a, b), l.meet(a, c)))
}

pub fn sd_join_witness(l: &FiniteLattice) -> Option<Vec<usize>> {
    first_triple(l, |a, b, c| {
        let ab = l.join(a, b);
        ab == l.join(a, c) && ab != l.join(a, l.meet(b, c))
    })
}

pub fn sd_meet_witness(l: &FiniteLattice) -> Option<Vec<usize>> {
    first_triple(l, |a, b, c| {
        let ab = l.meet(a, b);
        ab == l.meet(a, c) && ab != l.meet(a, l.join(b, c))
    })
}

pub fn whitman_witness(l: &FiniteLattice) -> Option<Vec<usize>> {
    for a in l.elements() {
        for b in l.elements() {
            let ab = l.meet(a, b);
            // ab = a or ab = b makes the first two disjuncts trivially true
            if ab == a || ab == b {
                continue;
            }
            for c in l.elements() {
                if l.leq(ab, c) {
                    continue;
                }
                for d in l.elements() {
                    let cd = l.join(c, d);
                    if l.leq(ab, cd) && !l.leq(a, cd) && !l.leq(b, cd) && !l.leq(ab, d) {
                        return Some(vec![a, b, c, d]);
                    }
                }
            }
        }
    }
    None
}

pub fn is_modular(l: &FiniteLattice) -> PropertyReport {
    PropertyReport::law("modular", modular_witness(l))
}

pub fn is_distributive(l: &FiniteLattice) -> PropertyReport {
    PropertyReport::law("distributive", distributive_witness(l))
}

pub fn is_semidistributive(l: &FiniteLattice, side: Side) -> PropertyReport {
    match side {
        Side::Join => PropertyReport::law("sd-join", sd_join_witness(l)),
        Side::Meet => PropertyReport::law("sd-meet", sd_meet_witness(l)),
        Side::Both => PropertyReport::law("sd", sd_join_witness(l).or_else(|| sd_meet_witness(l))),
    }
}

pub fn whitman_w(l: &FiniteLattice) -> PropertyReport {
    PropertyReport::law("whitman", whitman_witness(l))
}

/// A sublattice of `l` isomorphic to the pattern, as the map
/// `pattern element -> element of l`. Among all embeddings the
/// lexicographically least map is returned.
pub fn find_forbidden(l: &FiniteLattice, pattern: Pattern) -> Option<Vec<usize>> {
    let p = pattern.lattice();
    let mut map = Vec::with_capacity(p.len());
    embed(l, &p, &mut map).then_some(map)
}

fn embed(l: &FiniteLattice, p: &FiniteLattice, map: &mut Vec<usize>) -> bool {
    let i = map.len();
    if i == p.len() {
        return true;
    }
    for y in l.elements() {
        if map.contains(&y) {
            continue;
        }
        let order_ok = (0..i).all(|j| p.leq(j, i) == l.leq(map[j], y) && p.leq(i, j) == l.leq(y, map[j]));
        if !order_ok {
            continue;
        }
        map.push(y);
        // every operation whose operands and result are all placed must agree
        let ops_ok = (0..=i).all(|j| {
            (0..=i).all(|k| {
                let (pj, pm) = (p.join(j, k), p.meet(j, k));
                (pj > i || map[pj] == l.join(map[j], map[k])) && (pm > i || map[pm] == l.meet(map[j], map[k]))
            })
        });
        if ops_ok && embed(l, p, map) {
            return true;
        }
        map.pop();
    }
    false
}

pub fn forbidden_report(l: &FiniteLattice, pattern: Pattern) -> PropertyReport {
    let witness = find_forbidden(l, pattern);
    let name = match pattern {
        Pattern::M3 => "forbidden-m3",
        Pattern::N5 => "forbidden-n5",
    };
    PropertyReport { property: name.to_string(), verdict: witness.is_some(), witness }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub modular: bool,
    pub distributive: bool,
    pub n5: Option<Vec<usize>>,
    pub m3: Option<Vec<usize>>,
    pub agree: bool,
}

/// Checks the equational verdicts against the forbidden-sublattice search:
/// modular iff no N5, distributive iff neither N5 nor M3.
pub fn m3n5_crosscheck(l: &FiniteLattice) -> Result<CrossCheck> {
    let modular = modular_witness(l).is_none();
    let distributive = distributive_witness(l).is_none();
    let n5 = find_forbidden(l, Pattern::N5);
    let m3 = find_forbidden(l, Pattern::M3);
    if modular != n5.is_none() {
        return Err(Error::Disagreement(format!("modular = {modular} but N5 embedding = {n5:?}")));
    }
    if distributive != (n5.is_none() && m3.is_none()) {
        return Err(Error::Disagreement(format!("distributive = {distributive} but N5 = {n5:?}, M3 = {m3:?}")));
    }
    Ok(CrossCheck { modular, distributive, n5, m3, agree: true })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{chain, cube3, product, two_by_chain};

    /// 0 < a, b < m < c, d < 1 with m doubly reducible.
    fn dr_seven() -> FiniteLattice {
        FiniteLattice::from_covers(7, &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 4), (3, 5), (4, 6), (5, 6)]).unwrap()
    }

    #[test]
    fn modularity() {
        let r = is_modular(&n5());
        assert!(!r.verdict);
        let w = r.witness.unwrap();
        let (a, b, c) = (w[0], w[1], w[2]);
        let l = n5();
        assert!(l.leq(a, c) && l.join(a, l.meet(b, c)) != l.meet(l.join(a, b), c));
        assert!(is_modular(&m3()).verdict);
        assert!(is_modular(&cube3()).verdict);
    }

    #[test]
    fn distributivity() {
        assert!(is_distributive(&two_by_chain(4)).verdict);
        assert!(!is_distributive(&m3()).verdict);
        assert!(!is_distributive(&n5()).verdict);
    }

    #[test]
    fn semidistributivity() {
        assert!(is_semidistributive(&n5(), Side::Both).verdict);
        assert!(!is_semidistributive(&m3(), Side::Join).verdict);
        assert!(!is_semidistributive(&m3(), Side::Meet).verdict);
        assert!(is_semidistributive(&chain(5), Side::Both).verdict);
    }

    fn whitman_oracle(l: &FiniteLattice) -> Option<Vec<usize>> {
        let n = l.len();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let (ab, cd) = (l.meet(a, b), l.join(c, d));
                        if l.leq(ab, cd) && !(l.leq(a, cd) || l.leq(b, cd) || l.leq(ab, c) || l.leq(ab, d)) {
                            return Some(vec![a, b, c, d]);
                        }
                    }
                }
            }
        }
        None
    }

    #[test]
    fn whitman() {
        assert!(whitman_w(&cube3()).verdict);
        assert!(whitman_w(&m3()).verdict);
        let l = dr_seven();
        assert_eq!(whitman_w(&l).witness, Some(vec![4, 5, 1, 2]));
        for l in [cube3(), m3(), n5(), dr_seven(), product(&chain(3), &chain(3)).unwrap()] {
            assert_eq!(whitman_witness(&l), whitman_oracle(&l));
        }
    }

    #[test]
    fn forbidden() {
        assert_eq!(find_forbidden(&n5(), Pattern::N5), Some(vec![0, 1, 2, 3, 4]));
        assert_eq!(find_forbidden(&two_by_chain(3), Pattern::N5), None);
        assert_eq!(find_forbidden(&product(&chain(3), &chain(3)).unwrap(), Pattern::M3), None);
        assert_eq!(find_forbidden(&m3(), Pattern::M3), Some(vec![0, 1, 2, 3, 4]));
    }

    #[test]
    fn forbidden_search_matches_subset_oracle() {
        for l in [cube3(), product(&chain(3), &chain(3)).unwrap(), dr_seven(), n5(), m3()] {
            for pattern in [Pattern::M3, Pattern::N5] {
                let p = pattern.lattice();
                let mut found = false;
                for mask in 0u32..1 << l.len() {
                    if mask.count_ones() != 5 {
                        continue;
                    }
                    let set: Vec<usize> = (0..l.len()).filter(|&i| mask >> i & 1 == 1).collect();
                    if l.is_sublattice(&set) && crate::lattice::is_isomorphic(&l.induced(&set).unwrap(), &p).is_some() {
                        found = true;
                    }
                }
                assert_eq!(found, find_forbidden(&l, pattern).is_some());
            }
        }
    }

    #[test]
    fn crosscheck() {
        let r = m3n5_crosscheck(&n5()).unwrap();
        assert!(!r.modular && r.n5.is_some());
        let r = m3n5_crosscheck(&m3()).unwrap();
        assert!(r.modular && r.n5.is_none() && !r.distributive && r.m3.is_some());
    }
}
