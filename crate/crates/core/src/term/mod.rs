//! Free-lattice terms over named generators.
//!
//! Terms are trees of generators, joins (`+`) and meets (`*`). The smart
//! constructors [`Term::join`] and [`Term::meet`] flatten nested operations
//! of the same kind, so parsed and constructed terms never have a join
//! directly under a join or a meet directly under a meet.

mod parse;
mod whitman;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

pub use parse::{parse, MAX_DEPTH};
pub use whitman::{canonical, free_leq, FreeLattice};

use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Gen(String),
    Join(Vec<Term>),
    Meet(Vec<Term>),
}

impl Term {
    pub fn gen(name: impl Into<String>) -> Self {
        Term::Gen(name.into())
    }

    /// Join of `children`, flattened; a single child is returned as is.
    pub fn join(children: impl IntoIterator<Item = Term>) -> Self {
        let mut out = Vec::new();
        for c in children {
            match c {
                Term::Join(cs) => out.extend(cs),
                other => out.push(other),
            }
        }
        assert!(!out.is_empty(), "empty join");
        if out.len() == 1 {
            out.pop().unwrap()
        } else {
            Term::Join(out)
        }
    }

    /// Meet of `children`, flattened; a single child is returned as is.
    pub fn meet(children: impl IntoIterator<Item = Term>) -> Self {
        let mut out = Vec::new();
        for c in children {
            match c {
                Term::Meet(cs) => out.extend(cs),
                other => out.push(other),
            }
        }
        assert!(!out.is_empty(), "empty meet");
        if out.len() == 1 {
            out.pop().unwrap()
        } else {
            Term::Meet(out)
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Gen(_) => 0,
            Term::Join(cs) | Term::Meet(cs) => 1 + cs.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Gen(_) => 1,
            Term::Join(cs) | Term::Meet(cs) => 1 + cs.iter().map(Term::size).sum::<usize>(),
        }
    }

    pub fn generators(&self) -> Vec<String> {
        fn walk(t: &Term, out: &mut Vec<String>) {
            match t {
                Term::Gen(g) => out.push(g.clone()),
                Term::Join(cs) | Term::Meet(cs) => cs.iter().for_each(|c| walk(c, out)),
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out.sort();
        out.dedup();
        out
    }

    fn rank(&self) -> u8 {
        match self {
            Term::Gen(_) => 0,
            Term::Meet(_) => 1,
            Term::Join(_) => 2,
        }
    }
}

/// Generators first (by name), then meets, then joins; terms of the same
/// kind compare their children lexicographically.
impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Term::Gen(a), Term::Gen(b)) => a.cmp(b),
            (Term::Join(a), Term::Join(b)) | (Term::Meet(a), Term::Meet(b)) => a.cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Gen(g) => f.write_str(g),
            Term::Join(cs) => {
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        f.write_str("+")?;
                    }
                    match c {
                        Term::Join(_) => write!(f, "({c})")?,
                        _ => write!(f, "{c}")?,
                    }
                }
                Ok(())
            }
            Term::Meet(cs) => {
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        f.write_str("*")?;
                    }
                    match c {
                        Term::Gen(_) => write!(f, "{c}")?,
                        _ => write!(f, "({c})")?,
                    }
                }
                Ok(())
            }
        }
    }
}

impl Serialize for Term {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl std::str::FromStr for Term {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

/// Evaluates `t` in `l` with generators assigned by `assignment`: the
/// unique homomorphism from the free lattice extending the assignment.
pub fn eval(t: &Term, l: &FiniteLattice, assignment: &BTreeMap<String, usize>) -> Result<usize> {
    Ok(match t {
        Term::Gen(g) => {
            let &x = assignment.get(g).ok_or_else(|| Error::UnboundGenerator(g.clone()))?;
            l.check_index(x)?;
            x
        }
        Term::Join(cs) => {
            let mut acc = eval(&cs[0], l, assignment)?;
            for c in &cs[1..] {
                acc = l.join(acc, eval(c, l, assignment)?);
            }
            acc
        }
        Term::Meet(cs) => {
            let mut acc = eval(&cs[0], l, assignment)?;
            for c in &cs[1..] {
                acc = l.meet(acc, eval(c, l, assignment)?);
            }
            acc
        }
    })
}
