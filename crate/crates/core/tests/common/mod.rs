//! Brute-force reference implementations. Everything here works from the
//! order relation alone and recomputes joins, meets and covers by scanning,
//! so it shares no code paths with the library beyond `leq`.
#![allow(dead_code)]

use latkit::term::Term;
use latkit::FiniteLattice;

pub struct Ref {
    pub n: usize,
    le: Vec<Vec<bool>>,
    /// Join and meet tables, present when the order is a lattice.
    tables: Option<(Vec<Vec<usize>>, Vec<Vec<usize>>)>,
}

impl Ref {
    pub fn of(l: &FiniteLattice) -> Self {
        Self::from_le(l.len(), |x, y| l.leq(x, y))
    }

    pub fn from_le(n: usize, le: impl Fn(usize, usize) -> bool) -> Self {
        let mut r = Ref { n, le: (0..n).map(|x| (0..n).map(|y| le(x, y)).collect()).collect(), tables: None };
        let joins: Option<Vec<Vec<usize>>> = (0..n).map(|x| (0..n).map(|y| r.lub(x, y)).collect()).collect();
        let meets: Option<Vec<Vec<usize>>> = (0..n).map(|x| (0..n).map(|y| r.glb(x, y)).collect()).collect();
        r.tables = joins.zip(meets);
        r
    }

    pub fn le(&self, x: usize, y: usize) -> bool {
        self.le[x][y]
    }

    /// Least upper bound, if unique.
    pub fn lub(&self, x: usize, y: usize) -> Option<usize> {
        let ub: Vec<usize> = (0..self.n).filter(|&z| self.le(x, z) && self.le(y, z)).collect();
        ub.iter().copied().find(|&z| ub.iter().all(|&w| self.le(z, w)))
    }

    pub fn glb(&self, x: usize, y: usize) -> Option<usize> {
        let lb: Vec<usize> = (0..self.n).filter(|&z| self.le(z, x) && self.le(z, y)).collect();
        lb.iter().copied().find(|&z| lb.iter().all(|&w| self.le(w, z)))
    }

    pub fn is_lattice(&self) -> bool {
        self.tables.is_some()
    }

    pub fn j(&self, x: usize, y: usize) -> usize {
        self.tables.as_ref().expect("lattice").0[x][y]
    }

    pub fn m(&self, x: usize, y: usize) -> usize {
        self.tables.as_ref().expect("lattice").1[x][y]
    }

    pub fn covers(&self, x: usize, y: usize) -> bool {
        x != y && self.le(x, y) && (0..self.n).all(|z| z == x || z == y || !(self.le(x, z) && self.le(z, y)))
    }

    pub fn bottom(&self) -> usize {
        (0..self.n).find(|&x| (0..self.n).all(|y| self.le(x, y))).unwrap()
    }

    pub fn top(&self) -> usize {
        (0..self.n).find(|&x| (0..self.n).all(|y| self.le(y, x))).unwrap()
    }

    fn triples(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let n = self.n;
        (0..n).flat_map(move |a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c))))
    }

    pub fn modular(&self) -> bool {
        self.triples().all(|(a, b, c)| !self.le(a, c) || self.j(a, self.m(b, c)) == self.m(self.j(a, b), c))
    }

    pub fn distributive(&self) -> bool {
        self.triples().all(|(a, b, c)| self.m(a, self.j(b, c)) == self.j(self.m(a, b), self.m(a, c)))
    }

    pub fn sd_join(&self) -> bool {
        self.triples().all(|(x, y, z)| self.j(x, y) != self.j(x, z) || self.j(x, y) == self.j(x, self.m(y, z)))
    }

    pub fn sd_meet(&self) -> bool {
        self.triples().all(|(x, y, z)| self.m(x, y) != self.m(x, z) || self.m(x, y) == self.m(x, self.j(y, z)))
    }

    pub fn whitman(&self) -> bool {
        let n = self.n;
        (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| {
                    (0..n).all(|d| {
                        let (ab, cd) = (self.m(a, b), self.j(c, d));
                        !self.le(ab, cd) || self.le(a, cd) || self.le(b, cd) || self.le(ab, c) || self.le(ab, d)
                    })
                })
            })
        })
    }

    pub fn lower_cover_count(&self, x: usize) -> usize {
        (0..self.n).filter(|&y| self.covers(y, x)).count()
    }

    pub fn upper_cover_count(&self, x: usize) -> usize {
        (0..self.n).filter(|&y| self.covers(x, y)).count()
    }

    pub fn dr_free(&self) -> bool {
        (0..self.n).all(|x| self.lower_cover_count(x) < 2 || self.upper_cover_count(x) < 2)
    }

    /// Largest antichain, by trying every subset (n <= 20).
    pub fn width(&self) -> usize {
        let n = self.n;
        let mut best = 0;
        for mask in 1u32..1 << n {
            let s: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            if s.len() > best && s.iter().all(|&x| s.iter().all(|&y| x == y || !self.le(x, y))) {
                best = s.len();
            }
        }
        best
    }

    /// `L = L1 ⊕ L2` for nonempty `L1`, `L2`: some cover `p < q` has both
    /// ends comparable to everything.
    pub fn linearly_decomposable(&self) -> bool {
        let total = |x: usize| (0..self.n).all(|y| self.le(x, y) || self.le(y, x));
        (0..self.n).any(|p| (0..self.n).any(|q| self.covers(p, q) && total(p) && total(q)))
    }

    /// Does some injective map from `pat` preserve joins and meets?
    pub fn embeds(&self, pat: &Ref) -> bool {
        let mut map = Vec::new();
        self.embed_from(pat, &mut map)
    }

    fn embed_from(&self, pat: &Ref, map: &mut Vec<usize>) -> bool {
        if map.len() == pat.n {
            return true;
        }
        let i = map.len();
        for x in 0..self.n {
            if map.contains(&x) {
                continue;
            }
            map.push(x);
            let ok = (0..=i).all(|p| {
                (0..=i).all(|q| {
                    let (pj, pm) = (pat.j(p, q), pat.m(p, q));
                    (pj > i || self.j(map[p], map[q]) == map[pj]) && (pm > i || self.m(map[p], map[q]) == map[pm])
                })
            });
            if ok && self.embed_from(pat, map) {
                return true;
            }
            map.pop();
        }
        false
    }

    /// Order isomorphism by trying permutations with pruning.
    pub fn isomorphic(&self, other: &Ref) -> bool {
        if self.n != other.n {
            return false;
        }
        let mut map = Vec::new();
        self.iso_from(other, &mut map)
    }

    fn iso_from(&self, other: &Ref, map: &mut Vec<usize>) -> bool {
        let i = map.len();
        if i == self.n {
            return true;
        }
        for x in 0..other.n {
            if map.contains(&x) {
                continue;
            }
            map.push(x);
            if (0..=i).all(|p| self.le(p, i) == other.le(map[p], x) && self.le(i, p) == other.le(x, map[p]))
                && self.iso_from(other, map)
            {
                return true;
            }
            map.pop();
        }
        false
    }

    /// Is `map` an order isomorphism from `self` onto `other`?
    pub fn is_iso_map(&self, other: &Ref, map: &[usize]) -> bool {
        let mut seen = vec![false; other.n];
        for &y in map {
            if y >= other.n || std::mem::replace(&mut seen[y], true) {
                return false;
            }
        }
        map.len() == self.n && (0..self.n).all(|x| (0..self.n).all(|y| self.le(x, y) == other.le(map[x], map[y])))
    }

    pub fn is_sublattice(&self, set: &[usize]) -> bool {
        set.iter().all(|&x| set.iter().all(|&y| set.contains(&self.j(x, y)) && set.contains(&self.m(x, y))))
    }

    /// Closure of `seed` under join and meet by naive iteration.
    pub fn generated(&self, seed: &[usize]) -> Vec<usize> {
        let mut s: Vec<usize> = seed.to_vec();
        s.sort_unstable();
        s.dedup();
        loop {
            let mut next = s.clone();
            for &x in &s {
                for &y in &s {
                    next.push(self.j(x, y));
                    next.push(self.m(x, y));
                }
            }
            next.sort_unstable();
            next.dedup();
            if next == s {
                return s;
            }
            s = next;
        }
    }

    pub fn eval(&self, t: &Term, env: &dyn Fn(&str) -> usize) -> usize {
        match t {
            Term::Gen(g) => env(g),
            Term::Join(ts) => ts.iter().map(|t| self.eval(t, env)).reduce(|a, b| self.j(a, b)).unwrap(),
            Term::Meet(ts) => ts.iter().map(|t| self.eval(t, env)).reduce(|a, b| self.m(a, b)).unwrap(),
        }
    }
}

pub fn chain_ref(k: usize) -> Ref {
    Ref::from_le(k, |x, y| x <= y)
}

/// `2 x C_k` with `(i, j) -> i * k + j`.
pub fn two_by_chain_ref(k: usize) -> Ref {
    Ref::from_le(2 * k, |x, y| x / k <= y / k && x % k <= y % k)
}

pub fn cube_ref() -> Ref {
    Ref::from_le(8, |x, y| x & y == x)
}

pub fn m3_ref() -> Ref {
    Ref::from_le(5, |x, y| x == y || x == 0 || y == 4)
}

/// 0 < p < 1 and 0 < q < r < 1.
pub fn n5_ref() -> Ref {
    let up: [&[usize]; 5] = [&[0, 1, 2, 3, 4], &[1, 4], &[2, 3, 4], &[3, 4], &[4]];
    Ref::from_le(5, |x, y| up[x].contains(&y))
}

/// One representative per isomorphism class of `n`-element lattices, found
/// by listing every order on the inner elements compatible with the natural
/// labeling (every poset has a linear extension) and deduplicating by
/// brute-force isomorphism.
pub fn lattices_by_filter(n: usize) -> Vec<Ref> {
    if n <= 2 {
        return vec![chain_ref(n)];
    }
    let inner = n - 2;
    let pairs: Vec<(usize, usize)> = (0..inner).flat_map(|i| (i + 1..inner).map(move |j| (i, j))).collect();
    let mut reps: Vec<Ref> = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let rel =
            |i: usize, j: usize| i == j || pairs.iter().position(|&p| p == (i, j)).is_some_and(|k| mask >> k & 1 == 1);
        let transitive =
            (0..inner).all(|i| (0..inner).all(|j| (0..inner).all(|k| !(rel(i, j) && rel(j, k)) || rel(i, k))));
        if !transitive {
            continue;
        }
        let r = Ref::from_le(n, |x, y| x == 0 || y == n - 1 || (x != n - 1 && y != 0 && rel(x - 1, y - 1)));
        if r.is_lattice() && !reps.iter().any(|q| q.isomorphic(&r)) {
            reps.push(r);
        }
    }
    reps
}
