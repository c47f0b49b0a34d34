//! Whitman's solution of the word problem for free lattices, and canonical
//! forms.
//!
//! `s <= t` is decided by the first applicable rule:
//!
//! 1. `s = s1 + ... + sn`: every `si <= t`.
//! 2. `t = t1 * ... * tn`: `s <= tj` for every `j`.
//! 3. `s` and `t` generators: `s = t`.
//! 4. `s` a generator, `t = t1 + ... + tn`: `s <= tj` for some `j`.
//! 5. `s = s1 * ... * sn`, `t` a generator: `si <= t` for some `i`.
//! 6. `s = s1 * ... * sn`, `t = t1 + ... + tm`: `si <= t` for some `i` or
//!    `s <= tj` for some `j` (this is where condition (W) enters).
//!
//! Subterms are interned so that each pair is decided once.
//!
//! A term is canonical when its children are canonical, form an antichain,
//! and no child of a join is a meet with a conjunct below the whole join
//! (dually for meets). Canonical forms are unique up to the order of
//! children, which is fixed by sorting.

use std::collections::HashMap;

use super::Term;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Node {
    Gen(String),
    Join(Vec<usize>),
    Meet(Vec<usize>),
}

/// Interning table plus memo of decided comparisons. Reusing one instance
/// across many queries shares the work.
#[derive(Debug, Default)]
pub struct FreeLattice {
    nodes: Vec<Node>,
    ids: HashMap<Node, usize>,
    memo: HashMap<(usize, usize), bool>,
}

impl FreeLattice {
    pub fn new() -> Self {
        Self::default()
    }

    fn intern(&mut self, t: &Term) -> usize {
        let node = match t {
            Term::Gen(g) => Node::Gen(g.clone()),
            Term::Join(cs) => Node::Join(cs.iter().map(|c| self.intern(c)).collect()),
            Term::Meet(cs) => Node::Meet(cs.iter().map(|c| self.intern(c)).collect()),
        };
        if let Some(&id) = self.ids.get(&node) {
            return id;
        }
        let id = self.nodes.len();
        self.nodes.push(node.clone());
        self.ids.insert(node, id);
        id
    }

    pub fn leq(&mut self, s: &Term, t: &Term) -> bool {
        let (a, b) = (self.intern(s), self.intern(t));
        self.leq_id(a, b)
    }

    pub fn equivalent(&mut self, s: &Term, t: &Term) -> bool {
        self.leq(s, t) && self.leq(t, s)
    }

    fn leq_id(&mut self, s: usize, t: usize) -> bool {
        if s == t {
            return true;
        }
        if let Some(&r) = self.memo.get(&(s, t)) {
            return r;
        }
        let r = match (self.nodes[s].clone(), self.nodes[t].clone()) {
            (Node::Join(ss), _) => ss.iter().all(|&si| self.leq_id(si, t)),
            (_, Node::Meet(ts)) => ts.iter().all(|&tj| self.leq_id(s, tj)),
            (Node::Gen(a), Node::Gen(b)) => a == b,
            (Node::Gen(_), Node::Join(ts)) => ts.iter().any(|&tj| self.leq_id(s, tj)),
            (Node::Meet(ss), Node::Gen(_)) => ss.iter().any(|&si| self.leq_id(si, t)),
            (Node::Meet(ss), Node::Join(ts)) => {
                ss.iter().any(|&si| self.leq_id(si, t)) || ts.iter().any(|&tj| self.leq_id(s, tj))
            }
        };
        self.memo.insert((s, t), r);
        r
    }

    pub fn canonical(&mut self, t: &Term) -> Term {
        match t {
            Term::Gen(_) => t.clone(),
            Term::Join(cs) => {
                let kids = cs.iter().map(|c| self.canonical(c)).collect();
                self.normalize(kids, true)
            }
            Term::Meet(cs) => {
                let kids = cs.iter().map(|c| self.canonical(c)).collect();
                self.normalize(kids, false)
            }
        }
    }

    /// Normalizes a join (`is_join`) or meet of canonical children.
    fn normalize(&mut self, mut kids: Vec<Term>, is_join: bool) -> Term {
        loop {
            kids = flatten(kids, is_join);
            kids.sort();
            kids.dedup();
            // drop children absorbed by a sibling
            let mut keep = vec![true; kids.len()];
            for i in 0..kids.len() {
                for j in 0..kids.len() {
                    if i != j && keep[j] {
                        let absorbed =
                            if is_join { self.leq(&kids[i], &kids[j]) } else { self.leq(&kids[j], &kids[i]) };
                        if absorbed {
                            keep[i] = false;
                            break;
                        }
                    }
                }
            }
            kids = kids.into_iter().zip(keep).filter(|(_, k)| *k).map(|(t, _)| t).collect();
            if kids.len() == 1 {
                return kids.pop().unwrap();
            }
            let whole = if is_join { Term::Join(kids.clone()) } else { Term::Meet(kids.clone()) };
            // a join child s1*...*sk with some si <= whole can be replaced by si
            let mut replaced = false;
            for i in 0..kids.len() {
                let inner = match (&kids[i], is_join) {
                    (Term::Meet(ms), true) | (Term::Join(ms), false) => ms.clone(),
                    _ => continue,
                };
                let hit = inner.into_iter().find(|m| if is_join { self.leq(m, &whole) } else { self.leq(&whole, m) });
                if let Some(m) = hit {
                    kids[i] = m;
                    replaced = true;
                    break;
                }
            }
            if !replaced {
                return whole;
            }
        }
    }
}

fn flatten(kids: Vec<Term>, is_join: bool) -> Vec<Term> {
    let mut out = Vec::with_capacity(kids.len());
    for k in kids {
        match (k, is_join) {
            (Term::Join(cs), true) | (Term::Meet(cs), false) => out.extend(cs),
            (k, _) => out.push(k),
        }
    }
    out
}

/// `s <= t` in the free lattice.
pub fn free_leq(s: &Term, t: &Term) -> bool {
    FreeLattice::new().leq(s, t)
}

/// The canonical form of `t`: equivalent to `t`, and identical for any two
/// equivalent terms.
pub fn canonical(t: &Term) -> Term {
    FreeLattice::new().canonical(t)
}
