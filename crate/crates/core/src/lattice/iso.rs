//! Order isomorphism search and canonical codes for small posets.
//!
//! On finite lattices an order isomorphism is automatically a lattice
//! isomorphism, so everything here works on the order relation alone.

use super::FiniteLattice;

/// Minimal view of a finite poset on `0..size()`.
pub trait Poset {
    fn size(&self) -> usize;
    fn le(&self, x: usize, y: usize) -> bool;
}

impl Poset for FiniteLattice {
    fn size(&self) -> usize {
        self.len()
    }
    fn le(&self, x: usize, y: usize) -> bool {
        self.leq(x, y)
    }
}

/// Per-element isomorphism invariant: height, down-set size, up-set size,
/// lower and upper cover counts.
pub(crate) type Key = (usize, usize, usize, usize, usize);

pub(crate) fn invariants<P: Poset + ?Sized>(p: &P) -> Vec<Key> {
    let n = p.size();
    let lt = |x: usize, y: usize| x != y && p.le(x, y);
    let down: Vec<usize> = (0..n).map(|x| (0..n).filter(|&y| p.le(y, x)).count()).collect();
    let up: Vec<usize> = (0..n).map(|x| (0..n).filter(|&y| p.le(x, y)).count()).collect();
    let mut lower = vec![Vec::new(); n];
    let mut upper_count = vec![0usize; n];
    for x in 0..n {
        for y in 0..n {
            if lt(y, x) && !(0..n).any(|z| lt(y, z) && lt(z, x)) {
                lower[x].push(y);
                upper_count[y] += 1;
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| down[x]);
    let mut height = vec![0usize; n];
    for &x in &order {
        height[x] = lower[x].iter().map(|&l| height[l] + 1).max().unwrap_or(0);
    }
    (0..n).map(|x| (height[x], down[x], up[x], lower[x].len(), upper_count[x])).collect()
}

/// Returns the lexicographically least order isomorphism `a -> b`
/// (as `map[x] = image of x`), or `None`.
pub fn is_isomorphic(a: &FiniteLattice, b: &FiniteLattice) -> Option<Vec<usize>> {
    isomorphism_with(a, b, &[])
}

/// Like [`is_isomorphic`] but forces the given `(x, image)` pairs.
pub fn isomorphism_with<P: Poset + ?Sized, Q: Poset + ?Sized>(
    a: &P,
    b: &Q,
    fixed: &[(usize, usize)],
) -> Option<Vec<usize>> {
    let n = a.size();
    if n != b.size() {
        return None;
    }
    let ka = invariants(a);
    let kb = invariants(b);
    let mut sa = ka.clone();
    let mut sb = kb.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return None;
    }
    let mut forced = vec![None; n];
    for &(x, y) in fixed {
        if x >= n || y >= n || ka[x] != kb[y] {
            return None;
        }
        forced[x] = Some(y);
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(a, b, &ka, &kb, &forced, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend<P: Poset + ?Sized, Q: Poset + ?Sized>(
    a: &P,
    b: &Q,
    ka: &[Key],
    kb: &[Key],
    forced: &[Option<usize>],
    x: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let n = a.size();
    if x == n {
        return true;
    }
    let candidates: Box<dyn Iterator<Item = usize>> = match forced[x] {
        Some(y) => Box::new(std::iter::once(y)),
        None => Box::new(0..n),
    };
    for y in candidates {
        if used[y] || ka[x] != kb[y] {
            continue;
        }
        // forced images are reserved for their own preimages
        if forced.iter().enumerate().any(|(u, f)| u > x && *f == Some(y)) {
            continue;
        }
        let consistent = (0..x).all(|u| a.le(u, x) == b.le(map[u], y) && a.le(x, u) == b.le(y, map[u]));
        if !consistent {
            continue;
        }
        map[x] = y;
        used[y] = true;
        if extend(a, b, ka, kb, forced, x + 1, map, used) {
            return true;
        }
        used[y] = false;
    }
    map[x] = usize::MAX;
    false
}

/// A complete isomorphism invariant for posets of at most 64 elements:
/// the lexicographically least strict-down-relation matrix over all
/// invariant-sorted labelings.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode {
    pub n: usize,
    pub rows: Vec<u64>,
}

impl CanonicalCode {
    /// Compact hex rendering, stable across runs.
    pub fn to_hex(&self) -> String {
        let mut s = format!("{}:", self.n);
        for r in &self.rows {
            s.push_str(&format!("{r:x}."));
        }
        s.pop();
        s
    }
}

pub fn canonical_code(l: &FiniteLattice) -> CanonicalCode {
    canonical_labeling(l).0
}

/// Canonical code together with a labeling achieving it: `order[i]` is the
/// element placed at canonical position `i`.
pub(crate) fn canonical_labeling<P: Poset + ?Sized>(p: &P) -> (CanonicalCode, Vec<usize>) {
    let n = p.size();
    assert!(n <= 64, "canonical codes are limited to 64 elements");
    let keys = invariants(p);
    let mut sorted: Vec<usize> = (0..n).collect();
    sorted.sort_by_key(|&x| keys[x]);
    // cell[i] = key of the element that must sit at position i
    let cell: Vec<Key> = sorted.iter().map(|&x| keys[x]).collect();

    let mut search = Search {
        p,
        keys: &keys,
        cell: &cell,
        order: Vec::with_capacity(n),
        rows: Vec::with_capacity(n),
        used: vec![false; n],
        best_rows: Vec::new(),
        best_order: Vec::new(),
    };
    search.run(Standing::NoBest);
    (CanonicalCode { n, rows: search.best_rows }, search.best_order)
}

struct Search<'a, P: Poset + ?Sized> {
    p: &'a P,
    keys: &'a [Key],
    cell: &'a [Key],
    order: Vec<usize>,
    rows: Vec<u64>,
    used: Vec<bool>,
    best_rows: Vec<u64>,
    best_order: Vec<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Standing {
    NoBest,
    Tied,
    Better,
}

impl<P: Poset + ?Sized> Search<'_, P> {
    /// Returns true if the best labeling was replaced inside this subtree;
    /// the new best then shares the current prefix.
    fn run(&mut self, mut standing: Standing) -> bool {
        let i = self.order.len();
        let n = self.p.size();
        if i == n {
            if standing != Standing::Tied {
                self.best_rows = self.rows.clone();
                self.best_order = self.order.clone();
                return true;
            }
            return false;
        }
        let mut updated = false;
        for c in 0..n {
            if self.used[c] || self.keys[c] != self.cell[i] {
                continue;
            }
            let mut row = 0u64;
            for (j, &e) in self.order.iter().enumerate() {
                if self.p.le(e, c) {
                    row |= 1 << j;
                }
            }
            let child = match standing {
                Standing::Tied => match row.cmp(&self.best_rows[i]) {
                    std::cmp::Ordering::Greater => continue,
                    std::cmp::Ordering::Equal => Standing::Tied,
                    std::cmp::Ordering::Less => Standing::Better,
                },
                other => other,
            };
            self.used[c] = true;
            self.order.push(c);
            self.rows.push(row);
            if self.run(child) {
                updated = true;
                standing = Standing::Tied;
            }
            self.rows.pop();
            self.order.pop();
            self.used[c] = false;
        }
        updated
    }
}
