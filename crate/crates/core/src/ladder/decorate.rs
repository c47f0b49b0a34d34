use serde::{Deserialize, Serialize};

use super::LadderWindow;
use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;
use crate::subalgebra::generate_sublattice;

/// A point of the decorated window: a window coordinate `[rail, index]`, or
/// `{"new": k}` for the `k`-th inserted element (in insertion order).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Ref {
    Coord([i64; 2]),
    New(NewRef),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NewRef {
    pub new: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Insert {
    /// One element covering `lo` and covered by `hi`.
    Between(Between),
    /// One element with the given lower and upper covers.
    Attach(Attach),
    /// The configuration for case 1, 2 or 3 at `a = (1, j)`, `c = (0, j + 1)`.
    Case(CaseInsert),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Between {
    pub between: [Ref; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Attach {
    pub lower: Vec<Ref>,
    pub upper: Vec<Ref>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseInsert {
    pub case: u8,
    pub at: [Ref; 2],
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecorationSpec {
    pub insert: Vec<Insert>,
}

impl DecorationSpec {
    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decorated {
    pub window: LadderWindow,
    pub lattice: FiniteLattice,
    /// Elements `base..lattice.len()` are the inserted ones.
    pub base: usize,
    /// `(a, b, c)` for each case insert, in order.
    pub cases: Vec<(u8, [usize; 3])>,
}

impl Decorated {
    /// Stable label of an element: its window coordinate or `new k`.
    pub fn label(&self, x: usize) -> String {
        match self.window.coord.get(x) {
            Some((r, i)) => format!("({r},{i})"),
            None => format!("new {}", x - self.base),
        }
    }
}

/// Inserts the decoration into the window. The result must be a lattice;
/// otherwise the failing pair is reported.
pub fn decorate(w: &LadderWindow, spec: &DecorationSpec) -> Result<Decorated> {
    let base = w.carrier.len();
    let mut covers: Vec<(usize, usize)> = w.carrier.covers().to_vec();
    let mut next = base;
    let mut cases = Vec::new();
    let resolve = |r: &Ref, next: usize| -> Result<usize> {
        match r {
            Ref::Coord([rail, i]) => {
                let rail = usize::try_from(*rail).map_err(|_| Error::Decoration(format!("bad rail {rail}")))?;
                w.at(rail, *i).ok_or_else(|| Error::Decoration(format!("({rail},{i}) is outside the window")))
            }
            Ref::New(NewRef { new }) if base + new < next => Ok(base + new),
            Ref::New(NewRef { new }) => Err(Error::Decoration(format!("new element {new} is not yet inserted"))),
        }
    };
    for ins in &spec.insert {
        match ins {
            Insert::Between(Between { between: [lo, hi] }) => {
                let (lo, hi) = (resolve(lo, next)?, resolve(hi, next)?);
                covers.extend([(lo, next), (next, hi)]);
                next += 1;
            }
            Insert::Attach(Attach { lower, upper }) => {
                if lower.is_empty() || upper.is_empty() {
                    return Err(Error::Decoration("an attachment needs lower and upper covers".into()));
                }
                for r in lower {
                    covers.push((resolve(r, next)?, next));
                }
                for r in upper {
                    covers.push((next, resolve(r, next)?));
                }
                next += 1;
            }
            Insert::Case(CaseInsert { case, at: [a, c] }) => {
                let (Ref::Coord(_), Ref::Coord(_)) = (a, c) else {
                    return Err(Error::Decoration("case inserts attach to window coordinates".into()));
                };
                let (a, c) = (resolve(a, next)?, resolve(c, next)?);
                let l = &w.carrier;
                if !l.incomparable(a, c) {
                    return Err(Error::BadAttachment(format!(
                        "{} and {} are comparable",
                        w_label(w, a),
                        w_label(w, c)
                    )));
                }
                let (ac, apc) = (l.meet(a, c), l.join(a, c));
                if !l.is_cover(ac, c) || !l.is_cover(a, apc) {
                    return Err(Error::BadAttachment("need ac < c and a < a+c to be covers".into()));
                }
                let b = next;
                match case {
                    1 => {
                        covers.extend([(ac, b), (b, c)]);
                        next += 1;
                    }
                    2 => {
                        let d = b + 1;
                        covers.extend([(ac, b), (b, c), (a, d), (b, d), (d, apc)]);
                        next += 2;
                    }
                    3 => {
                        let (e, d) = (b + 1, b + 2);
                        covers.extend([(ac, b), (b, e), (e, c), (a, d), (e, d), (d, apc)]);
                        next += 3;
                    }
                    k => return Err(Error::Decoration(format!("unknown case {k}"))),
                }
                cases.push((*case, [a, b, c]));
            }
        }
    }
    // Window covers that gained an element in between are no longer covers;
    // from_covers takes the transitive reduction.
    let lattice = FiniteLattice::from_covers(next, &covers)?;
    let mut names: Vec<String> = w.carrier.names().map(|n| n.to_vec()).unwrap_or_default();
    names.extend((0..next - base).map(|k| format!("x{k}")));
    Ok(Decorated { window: w.clone(), lattice: lattice.with_names(names), base, cases })
}

fn w_label(w: &LadderWindow, x: usize) -> String {
    let (r, i) = w.coord[x];
    format!("({r},{i})")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseReport {
    pub case: u8,
    pub a: usize,
    pub b: usize,
    pub c: usize,
    /// The sublattice generated by the window together with `b`.
    pub generated: Vec<usize>,
    /// For case 3, `(a, b, (a + b)c)` is a case 1 configuration.
    pub case1_reduction: Option<[usize; 3]>,
}

/// Classifies an element `b` attached below `c` in a decorated window.
///
/// Requires `a || c` in the window with `a < a + c` and `ac < c` window
/// covers, and `ac < b < c` in the decorated lattice with `ac < b` a cover.
/// Case 1: `a + b = a + c`; case 2: `b = (a + b)c`; case 3: `(a + b)c > b`.
pub fn extend_case(d: &Decorated, a: usize, c: usize, b: usize) -> Result<CaseReport> {
    let (w, l) = (&d.window.carrier, &d.lattice);
    for x in [a, b, c] {
        l.check_index(x)?;
    }
    if a >= d.base || c >= d.base {
        return Err(Error::BadAttachment("a and c must be window elements".into()));
    }
    if !w.incomparable(a, c) || !w.is_cover(a, w.join(a, c)) || !w.is_cover(w.meet(a, c), c) {
        return Err(Error::BadAttachment("need a || c with a < a+c and ac < c covers in the window".into()));
    }
    if b < d.base {
        return Err(Error::BadAttachment(format!("{b} is a window element")));
    }
    let ac = l.meet(a, c);
    if !l.is_cover(ac, b) || !l.lt(b, c) {
        return Err(Error::BadAttachment(format!("need ac < {b} a cover and {b} < c")));
    }
    let ab = l.join(a, b);
    let top = l.meet(ab, c);
    let case = if ab == l.join(a, c) {
        1
    } else if top == b {
        2
    } else if l.lt(b, top) {
        3
    } else {
        return Err(Error::BadAttachment("configuration matches no case".into()));
    };
    let case1_reduction = (case == 3).then_some([a, b, top]);
    if let Some([a, b, cp]) = case1_reduction {
        if l.join(a, b) != l.join(a, cp) {
            return Err(Error::BadAttachment("case 3 does not reduce to case 1".into()));
        }
    }
    let mut seed: Vec<usize> = (0..d.base).collect();
    seed.push(b);
    Ok(CaseReport { case, a, b, c, generated: generate_sublattice(l, &seed), case1_reduction })
}

#[cfg(test)]
mod tests {
    use super::super::window;
    use super::*;
    use crate::properties::{sd_join_witness, sd_meet_witness, whitman_witness};

    fn spec(s: &str) -> DecorationSpec {
        DecorationSpec::from_json(s).unwrap()
    }

    #[test]
    fn parse_shapes() {
        let s = spec(
            r#"{"insert":[{"between":[[0,1],[0,2]]},{"lower":[{"new":0}],"upper":[[0,2]]},{"case":2,"at":[[1,1],[0,2]]}]}"#,
        );
        assert_eq!(s.insert.len(), 3);
        assert!(matches!(s.insert[2], Insert::Case(CaseInsert { case: 2, .. })));
        assert!(DecorationSpec::from_json(r#"{"insert":[{"between":[[0,1],[0,2]],"x":1}]}"#).is_err());
        assert!(DecorationSpec::from_json(r#"{"inserts":[]}"#).is_err());
    }

    #[test]
    fn subdivision() {
        let w = window(3).unwrap();
        let d = decorate(&w, &spec(r#"{"insert":[{"between":[[0,1],[0,2]]}]}"#)).unwrap();
        assert_eq!(d.lattice.len(), 15);
        let x = d.base;
        assert!(d.lattice.is_cover(w.at(0, 1).unwrap(), x));
        assert!(!d.lattice.is_cover(w.at(0, 1).unwrap(), w.at(0, 2).unwrap()));
        assert_eq!(d.label(x), "new 0");
    }

    #[test]
    fn not_a_lattice() {
        let w = window(3).unwrap();
        let r = decorate(&w, &spec(r#"{"insert":[{"lower":[[0,0],[1,-1]],"upper":[[1,1]]}]}"#));
        assert!(matches!(r, Err(Error::NotALattice { .. })), "{r:?}");
        let r = decorate(&w, &spec(r#"{"insert":[{"between":[[0,1],{"new":3}]}]}"#));
        assert!(matches!(r, Err(Error::Decoration(_))));
        let r = decorate(&w, &spec(r#"{"insert":[{"between":[[0,1],[0,9]]}]}"#));
        assert!(matches!(r, Err(Error::Decoration(_))));
    }

    #[test]
    fn cases_classify() {
        let w = window(3).unwrap();
        for case in 1..=3u8 {
            let s = spec(&format!(r#"{{"insert":[{{"case":{case},"at":[[1,1],[0,2]]}}]}}"#));
            let d = decorate(&w, &s).unwrap();
            let (k, [a, b, c]) = d.cases[0];
            let r = extend_case(&d, a, c, b).unwrap();
            assert_eq!((k, r.case), (case, case));
            assert_eq!(r.case1_reduction.is_some(), case == 3);
            assert!(whitman_witness(&d.lattice).is_none(), "case {case}");
            assert!(sd_join_witness(&d.lattice).is_none() && sd_meet_witness(&d.lattice).is_none(), "case {case}");
        }
        let r = decorate(&w, &spec(r#"{"insert":[{"case":1,"at":[[0,1],[0,2]]}]}"#));
        assert!(matches!(r, Err(Error::BadAttachment(_))));
    }
}
