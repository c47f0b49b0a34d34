//! Exhaustive generation of small lattices, one per isomorphism class.
//!
//! Removing the top of an `n`-element lattice leaves an `(n-1)`-element
//! meet-semilattice, and adding a top to a finite meet-semilattice gives a
//! lattice, so it suffices to generate meet-semilattices. Those are grown by
//! canonical augmentation: a child adds one new maximal element above a
//! down-set `D` of the parent (every `D ∩ ↓x` must have a largest element so
//! that meets with the new element exist). A child is kept only if the new
//! element is in the automorphism orbit of the child's canonical deletion
//! point, the last maximal element in canonical order; siblings are then
//! deduplicated by canonical code. Each class is produced exactly once.

use std::collections::{BTreeMap, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gj::{verify_prop_width2, verify_prop_width3, verify_theorem};
use crate::jonsson::d_sequence;
use crate::lattice::{canonical_labeling, chain, isomorphism_with, CanonicalCode, FiniteLattice, LatticeFile, Poset};
use crate::properties::{distributive_witness, m3n5_crosscheck, sd_join_witness, sd_meet_witness, whitman_witness};
use crate::subalgebra::{gadget_census, verify_universal};

/// Default largest lattice size the enumerator will generate.
pub const DEFAULT_ENUM_CAP: usize = 9;
/// Hard limit imposed by the 32-bit order rows.
pub const MAX_ENUM_N: usize = 32;

/// A poset on at most 32 elements; `down[x]` has bit `y` set iff `y <= x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SmallPoset {
    down: Vec<u32>,
}

impl Poset for SmallPoset {
    fn size(&self) -> usize {
        self.down.len()
    }
    fn le(&self, x: usize, y: usize) -> bool {
        self.down[y] >> x & 1 == 1
    }
}

impl SmallPoset {
    fn point() -> Self {
        SmallPoset { down: vec![1] }
    }

    fn is_maximal(&self, x: usize) -> bool {
        (0..self.down.len()).all(|y| y == x || self.down[y] >> x & 1 == 0)
    }

    /// Canonically relabeled copy with its canonical code.
    fn canonical(&self) -> (CanonicalCode, SmallPoset) {
        let (code, order) = canonical_labeling(self);
        let mut pos = vec![0; order.len()];
        for (i, &x) in order.iter().enumerate() {
            pos[x] = i;
        }
        let down = order
            .iter()
            .map(|&x| (0..order.len()).filter(|&y| self.le(y, x)).fold(0u32, |acc, y| acc | 1 << pos[y]))
            .collect();
        (code, SmallPoset { down })
    }

    /// Down-sets `D` admissible as the strict down-set of a new maximal
    /// element.
    fn attachment_sets(&self) -> impl Iterator<Item = u32> + '_ {
        let m = self.down.len();
        (1u32..1 << m).filter(move |&d| {
            let closed = (0..m).all(|x| d >> x & 1 == 0 || self.down[x] & !d == 0);
            closed
                && (0..m).all(|x| {
                    let t = d & self.down[x];
                    (0..m).any(|y| t >> y & 1 == 1 && t & !self.down[y] == 0)
                })
        })
    }

    fn children(&self) -> Vec<SmallPoset> {
        let m = self.down.len();
        let mut kept: BTreeMap<CanonicalCode, SmallPoset> = BTreeMap::new();
        for d in self.attachment_sets() {
            let mut down = self.down.clone();
            down.push(d | 1 << m);
            let child = SmallPoset { down };
            let (_, order) = canonical_labeling(&child);
            let last = *order.iter().rev().find(|&&x| child.is_maximal(x)).expect("a maximal element exists");
            if last != m && isomorphism_with(&child, &child, &[(m, last)]).is_none() {
                continue;
            }
            let (code, canon) = child.canonical();
            kept.entry(code).or_insert(canon);
        }
        kept.into_values().collect()
    }

    /// The lattice obtained by adding a top.
    fn with_top(&self) -> FiniteLattice {
        let m = self.down.len();
        FiniteLattice::from_order(m + 1, |x, y| y == m || (x < m && self.le(x, y)))
            .expect("a finite meet-semilattice plus a top is a lattice")
    }
}

type Filter = Box<dyn Fn(&FiniteLattice) -> bool + Send + Sync>;

/// Lattices of sizes `min_n..=max_n`, in increasing size and, within a size,
/// in the deterministic order of the generation tree.
pub struct LatticeStream {
    pub max_n: usize,
    min_n: usize,
    next_n: usize,
    level: Vec<SmallPoset>,
    buffer: VecDeque<FiniteLattice>,
    filters: Vec<Filter>,
}

impl LatticeStream {
    /// All lattices with at most `max_n` elements, under the default cap.
    pub fn up_to(max_n: usize) -> Result<Self> {
        Self::sizes(1, max_n, DEFAULT_ENUM_CAP)
    }

    pub fn sizes(min_n: usize, max_n: usize, cap: usize) -> Result<Self> {
        let cap = cap.min(MAX_ENUM_N);
        if max_n > cap {
            return Err(Error::CapExceeded { n: max_n, cap });
        }
        if min_n == 0 || max_n == 0 {
            return Err(Error::Empty);
        }
        Ok(Self { max_n, min_n, next_n: 1, level: Vec::new(), buffer: VecDeque::new(), filters: Vec::new() })
    }

    /// Keeps only lattices satisfying `pred`.
    pub fn filter(mut self, pred: impl Fn(&FiniteLattice) -> bool + Send + Sync + 'static) -> Self {
        self.filters.push(Box::new(pred));
        self
    }

    fn advance(&mut self) {
        let n = self.next_n;
        self.next_n += 1;
        let lattices: Vec<FiniteLattice> = match n {
            1 => vec![chain(1)],
            _ => {
                self.level = if n == 2 {
                    vec![SmallPoset::point()]
                } else {
                    self.level.par_iter().map(SmallPoset::children).collect::<Vec<_>>().concat()
                };
                if n < self.min_n {
                    return;
                }
                self.level.par_iter().map(SmallPoset::with_top).collect()
            }
        };
        if n < self.min_n {
            return;
        }
        let filters = &self.filters;
        let keep: Vec<bool> = lattices.par_iter().map(|l| filters.iter().all(|f| f(l))).collect();
        self.buffer.extend(lattices.into_iter().zip(keep).filter(|(_, k)| *k).map(|(l, _)| l));
    }
}

impl Iterator for LatticeStream {
    type Item = FiniteLattice;

    fn next(&mut self) -> Option<FiniteLattice> {
        while self.buffer.is_empty() && self.next_n <= self.max_n {
            self.advance();
        }
        self.buffer.pop_front()
    }
}

/// All `n`-element lattices up to isomorphism, under the default cap.
pub fn all_lattices(n: usize) -> Result<LatticeStream> {
    LatticeStream::sizes(n, n, DEFAULT_ENUM_CAP)
}

/// All lattices with `1..=max_n` elements, collected.
pub fn lattices_up_to(max_n: usize, cap: usize) -> Result<Vec<FiniteLattice>> {
    Ok(LatticeStream::sizes(1, max_n, cap)?.collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pocket {
    pub bottom: usize,
    pub top: usize,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

impl Pocket {
    pub fn elements(&self) -> Vec<usize> {
        let mut v = vec![self.bottom, self.top];
        v.extend(&self.a);
        v.extend(&self.b);
        v.sort_unstable();
        v
    }
}

/// The interval `[lo, hi]` as a pocket: its interior splits into two
/// chains `A`, `B` with `a + b = hi` and `ab = lo` for every cross pair.
/// Either chain may be empty.
pub fn pocket_at(l: &FiniteLattice, lo: usize, hi: usize) -> Option<Pocket> {
    if !l.lt(lo, hi) {
        return None;
    }
    let interior: Vec<usize> = l.interval(lo, hi).into_iter().filter(|&x| x != lo && x != hi).collect();
    let (mut a, mut b) = (Vec::new(), Vec::new());
    if let Some(&first) = interior.first() {
        for &x in &interior {
            if l.comparable(x, first) {
                a.push(x);
            } else {
                b.push(x);
            }
        }
    }
    let chain = |s: &[usize]| s.iter().all(|&x| s.iter().all(|&y| l.comparable(x, y)));
    let cross = a.iter().all(|&x| b.iter().all(|&y| l.join(x, y) == hi && l.meet(x, y) == lo));
    (chain(&a) && chain(&b) && cross).then_some(Pocket { bottom: lo, top: hi, a, b })
}

/// Splits `l` into a chain of pockets `P_1, ..., P_r` from bottom to top,
/// with consecutive pockets meeting in exactly `{0_{i+1}, 1_i}` and
/// non-consecutive pockets disjoint. The first decomposition in search
/// order is returned.
pub fn pocket_decomposition(l: &FiniteLattice) -> Option<Vec<Pocket>> {
    let mut path = Vec::new();
    extend_pockets(l, &mut path).then_some(path)
}

fn extend_pockets(l: &FiniteLattice, path: &mut Vec<Pocket>) -> bool {
    if let Some(last) = path.last() {
        if last.top == l.top() {
            let mut covered = vec![false; l.len()];
            for p in path.iter() {
                for x in p.elements() {
                    covered[x] = true;
                }
            }
            return covered.iter().all(|&c| c);
        }
    }
    let (lows, min_top): (Vec<usize>, Option<usize>) = match path.last() {
        None => (vec![l.bottom()], None),
        Some(prev) => (prev.elements().into_iter().filter(|&x| x != prev.bottom).collect(), Some(prev.top)),
    };
    for lo in lows {
        for hi in l.elements() {
            if min_top.is_some_and(|t| !l.lt(t, hi)) {
                continue;
            }
            let Some(p) = pocket_at(l, lo, hi) else { continue };
            let elems = p.elements();
            if let Some(prev) = path.last() {
                let mut shared: Vec<usize> = prev.elements().into_iter().filter(|x| elems.contains(x)).collect();
                let mut expect = vec![lo, prev.top];
                expect.sort_unstable();
                expect.dedup();
                shared.sort_unstable();
                if shared != expect {
                    continue;
                }
            }
            let k = path.len();
            if path[..k.saturating_sub(1)].iter().any(|q| q.elements().iter().any(|x| elems.contains(x))) {
                continue;
            }
            path.push(p);
            if extend_pockets(l, path) {
                return true;
            }
            path.pop();
        }
    }
    false
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanEntry {
    pub lattice: LatticeFile,
    pub sd_join: Option<Vec<usize>>,
    pub sd_meet: Option<Vec<usize>>,
    pub semidistributive: bool,
    pub pockets: Option<Vec<Pocket>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawWitness {
    pub lattice: LatticeFile,
    pub law: String,
    pub witness: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub max_n: usize,
    pub scanned: usize,
    pub width2_w: usize,
    pub sd_failures: Vec<LawWitness>,
    pub decomposition_failures: Vec<LatticeFile>,
    pub entries: Vec<ScanEntry>,
}

/// Finite evidence for the width-two conjecture: every width-two lattice
/// satisfying (W) is checked for semidistributivity and for a pocket
/// decomposition.
pub fn conjecture1_scan(max_n: usize, cap: usize) -> Result<ConjectureReport> {
    let all = lattices_up_to(max_n, cap)?;
    let scanned = all.len();
    let entries: Vec<ScanEntry> = all
        .par_iter()
        .filter(|l| l.width() == 2 && whitman_witness(l).is_none())
        .map(|l| {
            let sd_join = sd_join_witness(l);
            let sd_meet = sd_meet_witness(l);
            ScanEntry {
                lattice: LatticeFile::from_lattice(l),
                semidistributive: sd_join.is_none() && sd_meet.is_none(),
                sd_join,
                sd_meet,
                pockets: pocket_decomposition(l),
            }
        })
        .collect();
    let mut sd_failures = Vec::new();
    let mut decomposition_failures = Vec::new();
    for e in &entries {
        for (law, w) in [("sd-join", &e.sd_join), ("sd-meet", &e.sd_meet)] {
            if let Some(w) = w {
                sd_failures.push(LawWitness { lattice: e.lattice.clone(), law: law.into(), witness: w.clone() });
            }
        }
        if e.pockets.is_none() {
            decomposition_failures.push(e.lattice.clone());
        }
    }
    Ok(ConjectureReport { max_n, scanned, width2_w: entries.len(), sd_failures, decomposition_failures, entries })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusReport {
    pub max_n: usize,
    pub lattices: usize,
    pub checks: Vec<CheckOutcome>,
    pub passed: bool,
}

/// Runs every exhaustive check over all lattices with at most `max_n`
/// elements. Failures are reported, not raised.
pub fn verify_corpus(max_n: usize, cap: usize) -> Result<CorpusReport> {
    let all = lattices_up_to(max_n, cap)?;
    let mut checks = Vec::new();
    let mut push = |name: &str, r: std::result::Result<String, String>| {
        let passed = r.is_ok();
        checks.push(CheckOutcome { name: name.into(), passed, detail: r.unwrap_or_else(|e| e) });
    };

    let cross: Vec<Result<_>> = all.par_iter().map(m3n5_crosscheck).collect();
    let disagreements = cross.iter().filter(|r| r.is_err()).count();
    push(
        "m3-n5",
        if disagreements == 0 { Ok("0 disagreements".into()) } else { Err(format!("{disagreements} disagreements")) },
    );

    push(
        "width-3",
        match verify_prop_width3(&all) {
            Ok(r) if r.qualifying == 1 || max_n < 8 => Ok(format!("{} qualifying", r.qualifying)),
            Ok(r) => Err(format!("{} qualifying, expected 1", r.qualifying)),
            Err(e) => Err(e.to_string()),
        },
    );
    push(
        "width-2",
        verify_prop_width2(&all).map(|r| format!("{} qualifying", r.qualifying)).map_err(|e| e.to_string()),
    );
    push(
        "structure-theorem",
        verify_theorem(&all).map(|r| format!("{} pass", r.qualifying)).map_err(|e| e.to_string()),
    );

    let census = gadget_census(&all);
    push(
        "gadget-census",
        if census.iso_classes <= 6 && census.fingerprints <= 7 {
            Ok(format!("{} iso classes, {} fingerprints", census.iso_classes, census.fingerprints))
        } else {
            Err(format!("{} iso classes, {} fingerprints", census.iso_classes, census.fingerprints))
        },
    );
    let universal: Vec<Result<_>> = all.par_iter().map(verify_universal).collect();
    push(
        "universal",
        match universal.into_iter().find(|r| r.is_err()) {
            None => Ok("all admissible triples".into()),
            Some(e) => Err(e.unwrap_err().to_string()),
        },
    );

    let bad_quadrant = all
        .par_iter()
        .filter(|l| distributive_witness(l).is_none())
        .filter(|l| {
            let q = d_sequence(l).quadrant;
            !(q.d && q.dual)
        })
        .count();
    push(
        "distributive-quadrant",
        if bad_quadrant == 0 { Ok("all (=,=)".into()) } else { Err(format!("{bad_quadrant} off-quadrant")) },
    );

    let passed = checks.iter().all(|c| c.passed);
    Ok(CorpusReport { max_n, lattices: all.len(), checks, passed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{canonical_code, is_isomorphic, n5, two_by_chain};

    /// Naturally labeled lattices with 0 the bottom and n-1 the top: choose
    /// any transitive strict order on the inner elements compatible with
    /// index order, keep the lattices, and identify relabelings of the
    /// inner elements.
    fn oracle_count(n: usize) -> usize {
        if n <= 2 {
            return 1;
        }
        let inner: Vec<usize> = (1..n - 1).collect();
        let pairs: Vec<(usize, usize)> =
            inner.iter().flat_map(|&i| inner.iter().filter(move |&&j| i < j).map(move |&j| (i, j))).collect();
        let perms = permutations(&inner);
        let mut classes = std::collections::BTreeSet::new();
        for mask in 0u64..1 << pairs.len() {
            let rel = |x: usize, y: usize| {
                x == y
                    || x == 0
                    || y == n - 1
                    || pairs.iter().position(|&p| p == (x, y)).is_some_and(|k| mask >> k & 1 == 1)
            };
            let transitive = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !(rel(a, b) && rel(b, c)) || rel(a, c))));
            if !transitive || FiniteLattice::from_order(n, rel).is_err() {
                continue;
            }
            let key = perms
                .iter()
                .map(|p| {
                    let map = |x: usize| if x == 0 || x == n - 1 { x } else { p[x - 1] };
                    let mut bits = Vec::new();
                    for x in 0..n {
                        for y in 0..n {
                            bits.push(rel(x, y));
                        }
                    }
                    let mut out = vec![false; n * n];
                    for x in 0..n {
                        for y in 0..n {
                            out[map(x) * n + map(y)] = bits[x * n + y];
                        }
                    }
                    out
                })
                .min()
                .unwrap();
            classes.insert(key);
        }
        classes.len()
    }

    fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
        if items.len() <= 1 {
            return vec![items.to_vec()];
        }
        let mut out = Vec::new();
        for i in 0..items.len() {
            let mut rest = items.to_vec();
            let x = rest.remove(i);
            for mut p in permutations(&rest) {
                p.insert(0, x);
                out.push(p);
            }
        }
        out
    }

    #[test]
    fn counts_match_oracle() {
        for n in 1..=6 {
            let got = all_lattices(n).unwrap().count();
            assert_eq!(got, oracle_count(n), "n = {n}");
        }
    }

    #[test]
    fn known_counts() {
        let counts: Vec<usize> = (1..=7).map(|n| all_lattices(n).unwrap().count()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 5, 15, 53]);
    }

    #[test]
    fn no_duplicates() {
        let six: Vec<FiniteLattice> = all_lattices(6).unwrap().collect();
        for i in 0..six.len() {
            for j in i + 1..six.len() {
                assert!(is_isomorphic(&six[i], &six[j]).is_none());
            }
        }
        let codes: std::collections::BTreeSet<_> = all_lattices(7).unwrap().map(|l| canonical_code(&l)).collect();
        assert_eq!(codes.len(), 53);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(all_lattices(10), Err(Error::CapExceeded { n: 10, cap: 9 })));
        assert!(LatticeStream::sizes(10, 10, 10).is_ok());
    }

    #[test]
    fn filters_apply() {
        let dist = LatticeStream::up_to(6).unwrap().filter(|l| distributive_witness(l).is_none()).count();
        // 1, 1, 1, 2, 3, 5 distributive lattices of sizes 1..=6
        assert_eq!(dist, 13);
    }

    #[test]
    fn pockets() {
        let p = pocket_decomposition(&n5()).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!((p[0].a.len(), p[0].b.len()), (1, 2));
        let p = pocket_decomposition(&two_by_chain(4)).unwrap();
        assert_eq!(p.len(), 3);
        assert!(p.iter().all(|q| q.a.len() == 1 && q.b.len() == 1));
        assert!(pocket_at(&crate::lattice::cube3(), 0, 7).is_none());
    }
}
