//! Splitting `L \ H` into the parts that attach to rail 0 and to rail 1.

use serde::Serialize;

use super::{decorate, extract_ladder, spanning_candidate, window, DecorationSpec, Ladder, Spanning};
use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;
use crate::properties::{sd_join_witness, sd_meet_witness, whitman_witness};
use crate::subalgebra::{gadget, generate_sublattice, is_admissible};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Side {
    A,
    B,
}

/// Property (1): for `x` in `B \ H`, `(0, k) <= x` implies `(1, k) <= x`;
/// dually for `A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Prop1 {
    pub holds: bool,
    /// `(x, k)` pairs where the implication fails.
    pub violations: Vec<(usize, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Trace {
    /// `x` sits in the gap between `(1, n)` and `(1, n + 1)`; the gadget
    /// `((0, n + 1); (1, n), x)` is summarized when it is admissible.
    RungGap { element: usize, side: Side, n: i64, gadget_size: Option<usize>, fingerprint: Option<String> },
    /// The iteration `x' = x((1, m) + (x + (1, m))(0, n))`.
    Diagonal { element: usize, side: Side, m: i64, n: i64, steps: usize, terminal: &'static str },
    /// `x` is not bracketed by the rail inside the window.
    Boundary { element: usize, side: Side },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Split {
    pub ladder: Ladder,
    /// Rail 0 together with the elements assigned to it, sorted.
    pub a: Vec<usize>,
    /// Rail 1 together with the elements assigned to it, sorted.
    pub b: Vec<usize>,
    pub prop1: Prop1,
    /// `(x, |<H ∪ {x}> \ H|)` for every `x` outside `H`.
    pub hx: Vec<(usize, usize)>,
    pub traces: Vec<Trace>,
}

impl Split {
    pub fn side(&self, x: usize) -> Option<Side> {
        if self.a.binary_search(&x).is_ok() {
            Some(Side::A)
        } else if self.b.binary_search(&x).is_ok() {
            Some(Side::B)
        } else {
            None
        }
    }

    pub fn hx_of(&self, x: usize) -> Option<usize> {
        self.hx.iter().find(|p| p.0 == x).map(|p| p.1)
    }
}

fn obstruction(element: Option<usize>, reason: impl Into<String>) -> Error {
    Error::SplitObstruction { element, reason: reason.into() }
}

/// Assigns every element outside the ladder to rail 0 (`A`) or rail 1 (`B`).
///
/// `x` goes to `B` when the greatest rung index below it is the same on both
/// rails, otherwise to `A` when the least rung index above it agrees on both
/// rails. Both parts must then be sublattices. The lattice must satisfy (W)
/// and both semidistributive laws.
pub fn ladder_split(l: &FiniteLattice, h: &Ladder) -> Result<Split> {
    if let Some(w) = whitman_witness(l) {
        return Err(obstruction(None, format!("hypothesis (W) fails at {w:?}")));
    }
    if let Some(w) = sd_join_witness(l) {
        return Err(obstruction(None, format!("hypothesis SD-join fails at {w:?}")));
    }
    if let Some(w) = sd_meet_witness(l) {
        return Err(obstruction(None, format!("hypothesis SD-meet fails at {w:?}")));
    }
    let hs = h.elements();
    let mut in_h = vec![false; l.len()];
    for &x in &hs {
        in_h[x] = true;
    }
    let r = |i: usize, k: i64| h.at(i, k).unwrap();
    let max_below = |i: usize, x: usize| h.indices().rev().find(|&k| l.leq(r(i, k), x));
    let min_above = |i: usize, x: usize| h.indices().find(|&k| l.leq(x, r(i, k)));

    let mut a = h.rails[0].clone();
    let mut b = h.rails[1].clone();
    for x in l.elements().filter(|&x| !in_h[x]) {
        for m in h.indices() {
            for n in m + 1..=h.hi {
                if l.lt(r(0, m), x) && l.lt(x, r(1, n)) && !l.leq(r(1, m), x) && !l.leq(x, r(0, n)) {
                    return Err(obstruction(
                        Some(x),
                        format!("{x} lies strictly inside the prime interval [(0,{m}), (1,{n})]"),
                    ));
                }
            }
        }
        let (m0, m1) = (max_below(0, x), max_below(1, x));
        let (u0, u1) = (min_above(0, x), min_above(1, x));
        if m0.is_some() && m0 == m1 {
            b.push(x);
        } else if u0.is_some() && u0 == u1 {
            a.push(x);
        } else {
            return Err(obstruction(
                Some(x),
                format!("{x} is not placeable: below {m0:?}/{m1:?}, above {u0:?}/{u1:?}"),
            ));
        }
    }
    a.sort_unstable();
    b.sort_unstable();
    for (part, name) in [(&a, "A"), (&b, "B")] {
        if let Some(x) = part.iter().find(|&&x| {
            part.iter()
                .any(|&y| part.binary_search(&l.join(x, y)).is_err() || part.binary_search(&l.meet(x, y)).is_err())
        }) {
            return Err(obstruction(Some(*x), format!("{name} is not closed under join and meet")));
        }
    }

    let mut violations = Vec::new();
    for &x in b.iter().filter(|&&x| !in_h[x]) {
        violations.extend(h.indices().filter(|&k| l.leq(r(0, k), x) && !l.leq(r(1, k), x)).map(|k| (x, k)));
    }
    for &x in a.iter().filter(|&&x| !in_h[x]) {
        violations.extend(h.indices().filter(|&k| l.leq(x, r(1, k)) && !l.leq(x, r(0, k))).map(|k| (x, k)));
    }
    violations.sort_unstable();

    let hx = l
        .elements()
        .filter(|&x| !in_h[x])
        .map(|x| {
            let mut seed = hs.clone();
            seed.push(x);
            (x, generate_sublattice(l, &seed).len() - hs.len())
        })
        .collect();

    let cap = l.heights()[l.top()] + 1;
    let mut traces = Vec::new();
    for &x in b.iter().filter(|&&x| !in_h[x]) {
        traces.push(trace(l, &|i, k| h.at(i, k), h.lo, h.hi, x, Side::B, cap)?);
    }
    let dual = l.dual();
    for &x in a.iter().filter(|&&x| !in_h[x]) {
        // In the dual, (i, k) -> (1 - i, -k) turns A-elements into B-elements.
        traces.push(trace(&dual, &|i, k| h.at(1 - i, -k), -h.hi, -h.lo, x, Side::A, cap)?);
    }

    Ok(Split { ladder: h.clone(), a, b, prop1: Prop1 { holds: violations.is_empty(), violations }, hx, traces })
}

#[allow(clippy::too_many_arguments)]
fn trace(
    l: &FiniteLattice,
    r: &dyn Fn(usize, i64) -> Option<usize>,
    lo: i64,
    hi: i64,
    x: usize,
    side: Side,
    cap: usize,
) -> Result<Trace> {
    let m1 = (lo..=hi).rev().find(|&k| l.leq(r(1, k).unwrap(), x));
    let u1 = (lo..=hi).find(|&k| l.leq(x, r(1, k).unwrap()));
    let (Some(m1), Some(u1)) = (m1, u1) else {
        return Ok(Trace::Boundary { element: x, side });
    };
    if u1 == m1 + 1 {
        let n = m1;
        let (gadget_size, fingerprint) = match r(0, n + 1) {
            Some(a) if is_admissible(l, a, r(1, n).unwrap(), x) => {
                let g = gadget(l, a, r(1, n).unwrap(), x)?;
                (Some(g.size), Some(g.fingerprint.to_string()))
            }
            _ => (None, None),
        };
        return Ok(Trace::RungGap { element: x, side, n, gadget_size, fingerprint });
    }
    let (m, n) = (m1 + 1, u1);
    let (r1m, r0m, r0n) = (r(1, m).unwrap(), r(0, m).unwrap(), r(0, n).unwrap());
    let mut cur = x;
    for steps in 0..=cap {
        let s = l.join(cur, r1m);
        let y = l.meet(s, r0n);
        if y == r0m {
            return Ok(Trace::Diagonal { element: x, side, m, n, steps, terminal: "meets-rail" });
        }
        if l.lt(r0n, s) {
            return Ok(Trace::Diagonal { element: x, side, m, n, steps, terminal: "above-rail" });
        }
        cur = l.meet(cur, l.join(r1m, y));
    }
    Err(obstruction(Some(x), "diagonal iteration did not terminate"))
}

/// `|<H ∪ {x}> \ H|` for one element outside the ladder, at two radii.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Band {
    pub label: String,
    pub side: Side,
    pub at_k: usize,
    pub at_k2: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitReport {
    pub radius: Option<usize>,
    pub spanning: Spanning,
    pub split: Split,
    /// Element labels, indexed like the lattice.
    pub labels: Vec<String>,
    pub prop2_band: Vec<Band>,
    /// Every band has the same value at both radii.
    pub stable: bool,
    pub window_relative: bool,
}

/// Runs the whole construction through the cover `a < b` of `l`.
pub fn split_lattice(l: &FiniteLattice, a: usize, b: usize) -> Result<SplitReport> {
    let (spanning, split) = run(l, a, b)?;
    let labels: Vec<String> = l.elements().map(|x| l.name(x)).collect();
    let prop2_band = split
        .hx
        .iter()
        .map(|&(x, v)| Band { label: labels[x].clone(), side: split.side(x).unwrap(), at_k: v, at_k2: None })
        .collect();
    Ok(SplitReport { radius: None, spanning, split, labels, prop2_band, stable: true, window_relative: true })
}

fn run(l: &FiniteLattice, a: usize, b: usize) -> Result<(Spanning, Split)> {
    let s = spanning_candidate(l, a, b)?;
    if !s.holds {
        return Err(Error::ChainExhausted(format!("no spanning chains through {a} < {b} in this window")));
    }
    let h = extract_ladder(l, a, b, &s.up_chain, &s.down_chain)?;
    let split = ladder_split(l, &h)?;
    Ok((s, split))
}

/// Decorates the windows of radius `k` and `k + 2`, splits both through
/// `(0,0) < (1,0)`, and compares `|<H ∪ {x}> \ H|` per element.
pub fn split_report(k: usize, spec: &DecorationSpec) -> Result<SplitReport> {
    let at = |k: usize| -> Result<_> {
        let w = window(k)?;
        let d = decorate(&w, spec)?;
        let (a, b) = (w.at(0, 0).unwrap(), w.at(1, 0).unwrap());
        let (s, split) = run(&d.lattice, a, b)?;
        Ok((d, s, split))
    };
    let (d, spanning, split) = at(k)?;
    let (d2, _, split2) = at(k + 2)?;
    let labels: Vec<String> = d.lattice.elements().map(|x| d.label(x)).collect();
    let index2 = |label: &str| d2.lattice.elements().find(|&y| d2.label(y) == label);
    let prop2_band: Vec<Band> = split
        .hx
        .iter()
        .map(|&(x, v)| Band {
            label: labels[x].clone(),
            side: split.side(x).unwrap(),
            at_k: v,
            at_k2: index2(&labels[x]).and_then(|y| split2.hx_of(y)),
        })
        .collect();
    let stable = prop2_band.iter().all(|b| b.at_k2 == Some(b.at_k));
    Ok(SplitReport { radius: Some(k), spanning, split, labels, prop2_band, stable, window_relative: true })
}
