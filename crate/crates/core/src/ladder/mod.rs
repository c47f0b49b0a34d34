//! Ladders `2 x Z`, studied through finite windows `2 x {-k..k}`.
//!
//! A window has rails 0 and 1; element `(rail, i)` is numbered
//! `rail * (2k + 1) + (i + k)`, and `(0, i) < (1, i)`. Windows can be
//! decorated with extra elements, and the ladder-splitting construction can
//! then be run on the result. Every verdict about unboundedness is relative
//! to the window: a chain counts as unbounded when it reaches a coatom (or
//! atom) of the finite lattice.

mod decorate;
mod split;

pub use decorate::{
    decorate, extend_case, Attach, Between, CaseInsert, CaseReport, Decorated, DecorationSpec, Insert, NewRef, Ref,
};
pub use split::{ladder_split, split_lattice, split_report, Band, Prop1, Side, Split, SplitReport, Trace};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{chain, product, FiniteLattice};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LadderWindow {
    pub radius: usize,
    pub carrier: FiniteLattice,
    /// `coord[x] = (rail, index)`.
    pub coord: Vec<(usize, i64)>,
}

impl LadderWindow {
    pub fn at(&self, rail: usize, index: i64) -> Option<usize> {
        let k = self.radius as i64;
        (rail < 2 && (-k..=k).contains(&index)).then(|| rail * (2 * self.radius + 1) + (index + k) as usize)
    }
}

/// The window `2 x {-k..k}`.
pub fn window(k: usize) -> Result<LadderWindow> {
    if k == 0 {
        return Err(Error::InvalidInput("window radius must be at least 1".into()));
    }
    let len = 2 * k + 1;
    if 2 * len > crate::lattice::DEFAULT_MAX_N {
        return Err(Error::SizeCap { n: 2 * len, cap: crate::lattice::DEFAULT_MAX_N });
    }
    let coord: Vec<(usize, i64)> = (0..2 * len).map(|x| (x / len, (x % len) as i64 - k as i64)).collect();
    let names = coord.iter().map(|(r, i)| format!("({r},{i})")).collect();
    let carrier = product(&chain(2), &chain(len))?.with_names(names);
    Ok(LadderWindow { radius: k, carrier, coord })
}

/// Witness chains for a spanning-cover candidate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Spanning {
    pub holds: bool,
    /// `a < a_1 < a_2 < ...`, each incomparable to `b`, ending at a coatom.
    pub up_chain: Vec<usize>,
    /// `b > b_1 > b_2 > ...`, each incomparable to `a`, ending at an atom.
    pub down_chain: Vec<usize>,
    pub window_relative: bool,
}

/// Window version of a spanning cover `a < b`: an ascending cover-chain
/// from `a` through elements incomparable to `b` that reaches a coatom of
/// `l`, and dually a descending chain from `b` avoiding `a` that reaches an
/// atom. The lexicographically least such chains are returned.
pub fn spanning_candidate(l: &FiniteLattice, a: usize, b: usize) -> Result<Spanning> {
    l.check_index(a)?;
    l.check_index(b)?;
    if !l.is_cover(a, b) {
        return Err(Error::NotACover { a, b });
    }
    let mut dead = vec![false; l.len()];
    let up = chain_to_boundary(l, a, b, true, &mut dead).unwrap_or_default();
    let mut dead = vec![false; l.len()];
    let down = chain_to_boundary(l, b, a, false, &mut dead).unwrap_or_default();
    Ok(Spanning { holds: !up.is_empty() && !down.is_empty(), up_chain: up, down_chain: down, window_relative: true })
}

fn chain_to_boundary(
    l: &FiniteLattice,
    from: usize,
    avoid: usize,
    upward: bool,
    dead: &mut [bool],
) -> Option<Vec<usize>> {
    let next = if upward { l.upper_covers(from) } else { l.lower_covers(from) };
    let mut next = next.to_vec();
    next.sort_unstable();
    for v in next {
        if dead[v] || !l.incomparable(v, avoid) {
            continue;
        }
        let boundary = if upward { l.upper_covers(v) == [l.top()] } else { l.lower_covers(v) == [l.bottom()] };
        if boundary {
            return Some(vec![v]);
        }
        if let Some(mut rest) = chain_to_boundary(l, v, avoid, upward, dead) {
            rest.insert(0, v);
            return Some(rest);
        }
        dead[v] = true;
    }
    None
}

/// A ladder found inside a lattice: `rails[r][i - lo]` is the element at
/// coordinate `(r, i)` for `lo <= i <= hi`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Ladder {
    pub lo: i64,
    pub hi: i64,
    pub rails: [Vec<usize>; 2],
    /// Positions in the ascending chain selected as `a'_1, a'_2, ...`.
    pub up_selected: Vec<usize>,
    /// Positions in the descending chain selected as `b'_1, b'_2, ...`.
    pub down_selected: Vec<usize>,
}

impl Ladder {
    pub fn at(&self, rail: usize, index: i64) -> Option<usize> {
        if rail > 1 || index < self.lo || index > self.hi {
            return None;
        }
        Some(self.rails[rail][(index - self.lo) as usize])
    }

    pub fn indices(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi
    }

    pub fn elements(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.rails.iter().flatten().copied().collect();
        v.sort_unstable();
        v
    }
}

/// Groups consecutive chain positions with equal `key` and keeps the last
/// position of each group (the largest index with that value).
fn last_of_runs(keys: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < keys.len() {
        let j = (0..keys.len()).rev().find(|&j| keys[j] == keys[i]).expect("i itself matches");
        out.push(j);
        i = j + 1;
    }
    out
}

/// Builds the ladder through the cover `a < b` from witness chains.
///
/// The ascending chain is thinned to `a'_n`: the largest index whose join
/// with `b` equals that of the first unused position. Then `(1, n) = a'_n +
/// b`, and `(0, n + 1)` is the least-index coatom of the interval
/// `[a'_{n+1} + (0, n), (1, n + 1)]`. The negative half is the dual
/// construction from the descending chain.
pub fn extract_ladder(l: &FiniteLattice, a: usize, b: usize, up: &[usize], down: &[usize]) -> Result<Ladder> {
    if !l.is_cover(a, b) {
        return Err(Error::NotACover { a, b });
    }
    if up.is_empty() || down.is_empty() {
        return Err(Error::ChainExhausted("a witness chain is empty; enlarge the window".into()));
    }
    let fail = |m: String| Err(Error::ExtractionFailed(m));
    let mut prev = a;
    for &x in up {
        if !l.lt(prev, x) || !l.incomparable(x, b) {
            return fail(format!("ascending chain is not strictly increasing and incomparable to b at {x}"));
        }
        prev = x;
    }
    let mut prev = b;
    for &x in down {
        if !l.lt(x, prev) || !l.incomparable(x, a) {
            return fail(format!("descending chain is not strictly decreasing and incomparable to a at {x}"));
        }
        prev = x;
    }
    let up_keys: Vec<usize> = up.iter().map(|&x| l.join(x, b)).collect();
    let down_keys: Vec<usize> = down.iter().map(|&x| l.meet(x, a)).collect();
    let up_selected = last_of_runs(&up_keys);
    let down_selected = last_of_runs(&down_keys);

    let mut rail0 = vec![a];
    let mut rail1 = vec![b];
    for &i in &up_selected {
        let ap = up[i];
        if l.meet(ap, b) != a {
            return fail(format!("a'·b != a at {ap}"));
        }
        let top = l.join(ap, b);
        let lo = l.join(ap, *rail0.last().unwrap());
        if l.meet(lo, b) != a {
            return fail(format!("(a' + (0,n))·b != a at {lo}"));
        }
        let Some(x) = l.lower_covers(top).iter().copied().filter(|&y| l.leq(lo, y)).min() else {
            return fail(format!("interval [{lo}, {top}] has no coatom"));
        };
        rail0.push(x);
        rail1.push(top);
    }
    let mut neg0 = Vec::new();
    let mut neg1 = Vec::new();
    for &j in &down_selected {
        let bp = down[j];
        if l.join(bp, a) != b {
            return fail(format!("a + b' != b at {bp}"));
        }
        let bottom = l.meet(bp, a);
        let hi = l.meet(bp, *neg1.last().unwrap_or(&b));
        if l.join(hi, a) != b {
            return fail(format!("b'·(1,-n) + a != b at {hi}"));
        }
        let Some(y) = l.upper_covers(bottom).iter().copied().filter(|&z| l.leq(z, hi)).min() else {
            return fail(format!("interval [{bottom}, {hi}] has no atom"));
        };
        neg0.push(bottom);
        neg1.push(y);
    }
    let lo = -(neg0.len() as i64);
    let hi = (rail0.len() - 1) as i64;
    let rails = [
        neg0.iter().rev().chain(rail0.iter()).copied().collect::<Vec<_>>(),
        neg1.iter().rev().chain(rail1.iter()).copied().collect::<Vec<_>>(),
    ];
    let ladder = Ladder { lo, hi, rails, up_selected, down_selected };
    verify_ladder(l, &ladder)?;
    Ok(ladder)
}

/// `H` must be a sublattice of `l` whose order is exactly that of `2 x C`.
fn verify_ladder(l: &FiniteLattice, h: &Ladder) -> Result<()> {
    let pts: Vec<(usize, i64, usize)> =
        (0..2).flat_map(|r| h.indices().map(move |i| (r, i, h.at(r, i).unwrap()))).collect();
    let mut elems: Vec<usize> = pts.iter().map(|p| p.2).collect();
    elems.sort_unstable();
    elems.dedup();
    if elems.len() != pts.len() {
        return Err(Error::ExtractionFailed("ladder coordinates are not distinct".into()));
    }
    for &(r, i, x) in &pts {
        for &(s, j, y) in &pts {
            if l.leq(x, y) != (r <= s && i <= j) {
                return Err(Error::ExtractionFailed(format!("({r},{i}) and ({s},{j}) are misordered")));
            }
        }
    }
    if !l.is_sublattice(&elems) {
        return Err(Error::ExtractionFailed("ladder is not a sublattice".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::DecorationSpec;
    use super::*;
    use crate::lattice::{cube3, is_isomorphic, two_by_chain};

    #[test]
    fn windows() {
        let w = window(3).unwrap();
        assert_eq!(w.carrier.len(), 14);
        assert_eq!(w.carrier.width(), 2);
        assert!(is_isomorphic(&window(1).unwrap().carrier, &two_by_chain(3)).is_some());
        for i in -3..=3 {
            assert!(w.carrier.is_cover(w.at(0, i).unwrap(), w.at(1, i).unwrap()));
            assert_eq!(w.coord[w.at(1, i).unwrap()], (1, i));
        }
        assert!(window(0).is_err());
    }

    #[test]
    fn spanning() {
        let w = window(3).unwrap();
        let (a, b) = (w.at(0, 0).unwrap(), w.at(1, 0).unwrap());
        let s = spanning_candidate(&w.carrier, a, b).unwrap();
        assert!(s.holds);
        assert_eq!(s.up_chain, vec![w.at(0, 1).unwrap(), w.at(0, 2).unwrap(), w.at(0, 3).unwrap()]);
        assert_eq!(s.down_chain, vec![w.at(1, -1).unwrap(), w.at(1, -2).unwrap(), w.at(1, -3).unwrap()]);
        let c = chain(5);
        assert!(!spanning_candidate(&c, 1, 2).unwrap().holds);
        assert!(matches!(spanning_candidate(&c, 1, 3), Err(Error::NotACover { .. })));
        // in the cube only covers between an atom and a coatom qualify
        let cube = cube3();
        assert!(!spanning_candidate(&cube, 0, 1).unwrap().holds);
        assert!(spanning_candidate(&cube, 1, 3).unwrap().holds);
    }

    #[test]
    fn extract_plain_window() {
        let w = window(3).unwrap();
        let l = &w.carrier;
        let (a, b) = (w.at(0, 0).unwrap(), w.at(1, 0).unwrap());
        let s = spanning_candidate(l, a, b).unwrap();
        let h = extract_ladder(l, a, b, &s.up_chain, &s.down_chain).unwrap();
        assert_eq!((h.lo, h.hi), (-3, 3));
        for r in 0..2 {
            for i in -3..=3 {
                assert_eq!(h.at(r, i), w.at(r, i));
            }
        }
        assert!(matches!(extract_ladder(l, a, b, &[], &s.down_chain), Err(Error::ChainExhausted(_))));
    }

    #[test]
    fn redundant_chain_picks_largest_index() {
        let w = window(4).unwrap();
        let (a, b) = (w.at(0, 0).unwrap(), w.at(1, 0).unwrap());
        let d = super::decorate(&w, &DecorationSpec::from_json(r#"{"insert":[{"between":[[0,1],[0,2]]}]}"#).unwrap())
            .unwrap();
        let s = spanning_candidate(&d.lattice, a, b).unwrap();
        assert_eq!(s.up_chain[1], d.base);
        let h = extract_ladder(&d.lattice, a, b, &s.up_chain, &s.down_chain).unwrap();
        // the subdivision point and (0,2) share a join with b; the later one wins
        assert_eq!(h.up_selected, vec![0, 2, 3, 4]);
        assert!(!h.elements().contains(&d.base));
        let sub = d.lattice.induced(&h.elements()).unwrap();
        assert!(is_isomorphic(&sub, &two_by_chain(9)).is_some());
    }

    #[test]
    fn runs_keep_largest_index() {
        assert_eq!(last_of_runs(&[5, 5, 7, 8, 8, 8]), vec![1, 2, 5]);
        assert_eq!(last_of_runs(&[]), Vec::<usize>::new());
    }
}
