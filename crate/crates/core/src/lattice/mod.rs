//! Finite lattices as dense element indices with materialized join and meet
//! tables.
//!
//! Elements are `0..n`. Construction validates that the supplied relation is
//! a partial order in which every pair has a least upper bound and greatest
//! lower bound; after that every lattice operation is a table lookup.

mod catalog;
mod io;
mod iso;
mod structure;

pub use catalog::*;
pub use io::{to_dot, LatticeFile};
pub(crate) use iso::canonical_labeling;
pub use iso::{canonical_code, is_isomorphic, isomorphism_with, CanonicalCode, Poset};
pub use structure::{Block, Irreducibles};

use crate::error::{Bound, Error, Result};

/// Default cap on the number of elements a lattice may have.
pub const DEFAULT_MAX_N: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLattice {
    n: usize,
    words: usize,
    /// `up[x]` holds every `y` with `x <= y`.
    up: Vec<u64>,
    /// `down[x]` holds every `y` with `y <= x`.
    down: Vec<u64>,
    join: Vec<u32>,
    meet: Vec<u32>,
    covers: Vec<(usize, usize)>,
    lower: Vec<Vec<usize>>,
    upper: Vec<Vec<usize>>,
    bottom: usize,
    top: usize,
    names: Option<Vec<String>>,
}

pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

#[inline]
fn bit(row: &[u64], i: usize) -> bool {
    row[i / 64] >> (i % 64) & 1 == 1
}

#[inline]
fn set_bit(row: &mut [u64], i: usize) {
    row[i / 64] |= 1 << (i % 64);
}

fn popcount(row: &[u64]) -> u32 {
    row.iter().map(|w| w.count_ones()).sum()
}

fn iter_bits(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
    row.iter().enumerate().flat_map(|(wi, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + t)
            }
        })
    })
}

impl FiniteLattice {
    /// Builds a lattice from a list of (lower, upper) pairs whose
    /// reflexive-transitive closure is the order. Redundant pairs are
    /// allowed; the stored cover relation is recomputed.
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Result<Self> {
        Self::from_covers_capped(n, covers, DEFAULT_MAX_N)
    }

    pub fn from_covers_capped(n: usize, covers: &[(usize, usize)], cap: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        if n > cap {
            return Err(Error::SizeCap { n, cap });
        }
        let mut succ = vec![Vec::new(); n];
        for &(lo, hi) in covers {
            for i in [lo, hi] {
                if i >= n {
                    return Err(Error::IndexOutOfRange { index: i, n });
                }
            }
            if lo == hi {
                return Err(Error::NotAPartialOrder { x: lo, y: hi });
            }
            succ[lo].push(hi);
        }
        let words = words_for(n);
        let mut up = vec![0u64; n * words];
        let mut stack = Vec::new();
        for x in 0..n {
            let row = &mut up[x * words..(x + 1) * words];
            set_bit(row, x);
            stack.push(x);
            while let Some(v) = stack.pop() {
                for &w in &succ[v] {
                    if !bit(row, w) {
                        set_bit(row, w);
                        stack.push(w);
                    }
                }
            }
        }
        Self::from_up_rows(n, up, None)
    }

    /// Builds a lattice from a full order predicate. The predicate must be
    /// reflexive and transitive; antisymmetry and the lattice property are
    /// checked.
    pub fn from_order(n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        if n > DEFAULT_MAX_N {
            return Err(Error::SizeCap { n, cap: DEFAULT_MAX_N });
        }
        let words = words_for(n);
        let mut up = vec![0u64; n * words];
        for x in 0..n {
            for y in 0..n {
                if x == y || leq(x, y) {
                    set_bit(&mut up[x * words..(x + 1) * words], y);
                }
            }
        }
        Self::from_up_rows(n, up, None)
    }

    fn from_up_rows(n: usize, up: Vec<u64>, names: Option<Vec<String>>) -> Result<Self> {
        let words = words_for(n);
        let mut down = vec![0u64; n * words];
        for x in 0..n {
            for y in iter_bits(&up[x * words..(x + 1) * words]) {
                set_bit(&mut down[y * words..(y + 1) * words], x);
            }
        }
        for x in 0..n {
            for y in (x + 1)..n {
                if bit(&up[x * words..], y) && bit(&up[y * words..], x) {
                    return Err(Error::NotAPartialOrder { x, y });
                }
            }
        }
        let up_count: Vec<u32> = (0..n).map(|x| popcount(&up[x * words..(x + 1) * words])).collect();
        let down_count: Vec<u32> = (0..n).map(|x| popcount(&down[x * words..(x + 1) * words])).collect();

        let mut join = vec![0u32; n * n];
        let mut meet = vec![0u32; n * n];
        let mut scratch = vec![0u64; words];
        for x in 0..n {
            join[x * n + x] = x as u32;
            meet[x * n + x] = x as u32;
            for y in (x + 1)..n {
                let j = extremal(&up, &up_count, words, x, y, &mut scratch).ok_or(Error::NotALattice {
                    x,
                    y,
                    missing: Bound::Join,
                })?;
                let m = extremal(&down, &down_count, words, x, y, &mut scratch).ok_or(Error::NotALattice {
                    x,
                    y,
                    missing: Bound::Meet,
                })?;
                join[x * n + y] = j as u32;
                join[y * n + x] = j as u32;
                meet[x * n + y] = m as u32;
                meet[y * n + x] = m as u32;
            }
        }

        let mut covers = Vec::new();
        let mut lower = vec![Vec::new(); n];
        let mut upper = vec![Vec::new(); n];
        for x in 0..n {
            for y in iter_bits(&up[x * words..(x + 1) * words]) {
                if y == x {
                    continue;
                }
                let between = up[x * words..(x + 1) * words]
                    .iter()
                    .zip(&down[y * words..(y + 1) * words])
                    .map(|(a, b)| (a & b).count_ones())
                    .sum::<u32>();
                if between == 2 {
                    covers.push((x, y));
                    upper[x].push(y);
                    lower[y].push(x);
                }
            }
        }
        covers.sort_unstable();
        for l in lower.iter_mut() {
            l.sort_unstable();
        }
        // a lattice always has these once every pair has a bound
        let bottom = (0..n).find(|&x| up_count[x] as usize == n).expect("bottom");
        let top = (0..n).find(|&x| down_count[x] as usize == n).expect("top");
        Ok(Self { n, words, up, down, join, meet, covers, lower, upper, bottom, top, names })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        bit(&self.up[x * self.words..], y)
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    #[inline]
    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    #[inline]
    pub fn incomparable(&self, x: usize, y: usize) -> bool {
        !self.comparable(x, y)
    }

    #[inline]
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.n + y] as usize
    }

    #[inline]
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.n + y] as usize
    }

    pub fn join_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.bottom(), |acc, x| self.join(acc, x))
    }

    pub fn meet_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.top(), |acc, x| self.meet(acc, x))
    }

    pub fn is_cover(&self, x: usize, y: usize) -> bool {
        self.upper[x].contains(&y)
    }

    /// Cover pairs `(lo, hi)` sorted lexicographically.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lower[x]
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper[x]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Elements `y` with `x <= y`, ascending.
    pub fn up_set(&self, x: usize) -> Vec<usize> {
        iter_bits(&self.up[x * self.words..(x + 1) * self.words]).collect()
    }

    /// Elements `y` with `y <= x`, ascending.
    pub fn down_set(&self, x: usize) -> Vec<usize> {
        iter_bits(&self.down[x * self.words..(x + 1) * self.words]).collect()
    }

    pub fn up_count(&self, x: usize) -> usize {
        popcount(&self.up[x * self.words..(x + 1) * self.words]) as usize
    }

    pub fn down_count(&self, x: usize) -> usize {
        popcount(&self.down[x * self.words..(x + 1) * self.words]) as usize
    }

    /// Length of the longest chain from the bottom to `x`.
    pub fn heights(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&x| self.down_count(x));
        let mut h = vec![0usize; self.n];
        for &x in &order {
            h[x] = self.lower[x].iter().map(|&l| h[l] + 1).max().unwrap_or(0);
        }
        h
    }

    /// Elements of the closed interval `[lo, hi]`, ascending.
    pub fn interval(&self, lo: usize, hi: usize) -> Vec<usize> {
        let (u, d) = (&self.up[lo * self.words..], &self.down[hi * self.words..]);
        (0..self.words)
            .flat_map(|w| {
                let mut bits = u[w] & d[w];
                std::iter::from_fn(move || {
                    if bits == 0 {
                        None
                    } else {
                        let t = bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        Some(w * 64 + t)
                    }
                })
            })
            .collect()
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn name(&self, x: usize) -> String {
        match &self.names {
            Some(names) => names[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.as_ref()?.iter().position(|s| s == name)
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.n, "one name per element");
        self.names = Some(names);
        self
    }

    pub fn without_names(mut self) -> Self {
        self.names = None;
        self
    }

    /// The order dual: same element indices, order reversed.
    pub fn dual(&self) -> Self {
        Self {
            n: self.n,
            words: self.words,
            up: self.down.clone(),
            down: self.up.clone(),
            join: self.meet.clone(),
            meet: self.join.clone(),
            covers: {
                let mut c: Vec<_> = self.covers.iter().map(|&(a, b)| (b, a)).collect();
                c.sort_unstable();
                c
            },
            lower: self.upper.clone(),
            upper: self.lower.clone(),
            bottom: self.top,
            top: self.bottom,
            names: self.names.clone(),
        }
    }

    /// The lattice induced on `elems` (which must be a sublattice, or at
    /// least a subset whose induced order is a lattice). Element `i` of the
    /// result is `elems[i]`.
    pub fn induced(&self, elems: &[usize]) -> Result<Self> {
        let sub = Self::from_order(elems.len(), |i, j| self.leq(elems[i], elems[j]))?;
        Ok(match &self.names {
            Some(names) => sub.with_names(elems.iter().map(|&e| names[e].clone()).collect()),
            None => sub,
        })
    }

    /// Renumbers elements so that old element `x` becomes `perm[x]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        let mut inv = vec![0; self.n];
        for (x, &p) in perm.iter().enumerate() {
            inv[p] = x;
        }
        let out = Self::from_order(self.n, |i, j| self.leq(inv[i], inv[j]))
            .expect("relabeling preserves the lattice property");
        match &self.names {
            Some(names) => out.with_names((0..self.n).map(|i| names[inv[i]].clone()).collect()),
            None => out,
        }
    }

    /// True if `set` is closed under join and meet.
    pub fn is_sublattice(&self, set: &[usize]) -> bool {
        let mut member = vec![false; self.n];
        for &x in set {
            member[x] = true;
        }
        set.iter().all(|&x| set.iter().all(|&y| member[self.join(x, y)] && member[self.meet(x, y)]))
    }

    pub(crate) fn check_index(&self, x: usize) -> Result<()> {
        if x < self.n {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: x, n: self.n })
        }
    }
}

/// Least element of `rows[x] & rows[y]` in the order whose "above" sets are
/// `rows`; `None` if the common bound set has no such element.
fn extremal(rows: &[u64], counts: &[u32], words: usize, x: usize, y: usize, scratch: &mut [u64]) -> Option<usize> {
    let (rx, ry) = (&rows[x * words..(x + 1) * words], &rows[y * words..(y + 1) * words]);
    for w in 0..words {
        scratch[w] = rx[w] & ry[w];
    }
    let total = popcount(scratch);
    if total == 0 {
        return None;
    }
    iter_bits(scratch).find(|&u| counts[u] == total)
}
