use serde::Serialize;

use super::FiniteLattice;

/// A summand of the linear-sum decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    /// Elements of the summand, ascending by index.
    pub elements: Vec<usize>,
    /// Position in the bottom-to-top order of summands.
    pub position: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Irreducibles {
    pub join_irreducible: Vec<usize>,
    pub meet_irreducible: Vec<usize>,
    pub doubly_reducible: Vec<usize>,
}

impl FiniteLattice {
    /// Size of a largest antichain, computed as `n - (maximum matching)` in
    /// the bipartite strict-order graph (minimum chain cover).
    pub fn width(&self) -> usize {
        let n = self.len();
        let succ: Vec<Vec<usize>> = (0..n).map(|x| (0..n).filter(|&y| self.lt(x, y)).collect()).collect();
        let mut matched_right: Vec<Option<usize>> = vec![None; n];
        let mut matching = 0;
        for x in 0..n {
            let mut seen = vec![false; n];
            if augment(x, &succ, &mut seen, &mut matched_right) {
                matching += 1;
            }
        }
        n - matching
    }

    /// A largest antichain, recovered from the minimum chain cover via
    /// König's theorem.
    pub fn max_antichain(&self) -> Vec<usize> {
        let n = self.len();
        let succ: Vec<Vec<usize>> = (0..n).map(|x| (0..n).filter(|&y| self.lt(x, y)).collect()).collect();
        let mut matched_right: Vec<Option<usize>> = vec![None; n];
        for x in 0..n {
            let mut seen = vec![false; n];
            augment(x, &succ, &mut seen, &mut matched_right);
        }
        let mut matched_left = vec![None; n];
        for (y, m) in matched_right.iter().enumerate() {
            if let Some(x) = m {
                matched_left[*x] = Some(y);
            }
        }
        // alternating reachability from unmatched left vertices
        let mut vis_left = vec![false; n];
        let mut vis_right = vec![false; n];
        let mut stack: Vec<usize> = (0..n).filter(|&x| matched_left[x].is_none()).collect();
        for &x in &stack {
            vis_left[x] = true;
        }
        while let Some(x) = stack.pop() {
            for &y in &succ[x] {
                if !vis_right[y] {
                    vis_right[y] = true;
                    if let Some(x2) = matched_right[y] {
                        if !vis_left[x2] {
                            vis_left[x2] = true;
                            stack.push(x2);
                        }
                    }
                }
            }
        }
        // minimum vertex cover = (left unvisited) + (right visited); the
        // antichain is the elements in neither side of the cover
        (0..n).filter(|&x| vis_left[x] && !vis_right[x]).collect()
    }

    /// Splits the lattice into its maximal linearly indecomposable summands,
    /// bottom to top. Incomparability components are merged except across a
    /// boundary between two consecutive singleton components.
    pub fn linear_decompose(&self) -> Vec<Block> {
        let n = self.len();
        let mut comp = vec![usize::MAX; n];
        let mut comps: Vec<Vec<usize>> = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = comps.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < members.len() {
                let x = members[i];
                for y in 0..n {
                    if comp[y] == usize::MAX && self.incomparable(x, y) {
                        comp[y] = id;
                        members.push(y);
                    }
                }
                i += 1;
            }
            members.sort_unstable();
            comps.push(members);
        }
        // components are totally ordered: compare any representatives
        comps.sort_by(|a, b| {
            if a[0] == b[0] {
                std::cmp::Ordering::Equal
            } else if self.leq(a[0], b[0]) {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            }
        });
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut prev_singleton = false;
        for c in comps {
            let single = c.len() == 1;
            match blocks.last_mut() {
                Some(last) if !(prev_singleton && single) => last.extend(c),
                _ => blocks.push(c),
            }
            prev_singleton = single;
        }
        blocks
            .into_iter()
            .enumerate()
            .map(|(position, mut elements)| {
                elements.sort_unstable();
                Block { elements, position }
            })
            .collect()
    }

    pub fn is_linearly_indecomposable(&self) -> bool {
        self.linear_decompose().len() == 1
    }

    /// Join-irreducibles have exactly one lower cover, meet-irreducibles
    /// exactly one upper cover; doubly reducible elements are proper joins
    /// and proper meets at once.
    pub fn irreducibles(&self) -> Irreducibles {
        let join_irreducible = self.elements().filter(|&x| self.lower_covers(x).len() == 1).collect();
        let meet_irreducible = self.elements().filter(|&x| self.upper_covers(x).len() == 1).collect();
        let doubly_reducible =
            self.elements().filter(|&x| self.lower_covers(x).len() >= 2 && self.upper_covers(x).len() >= 2).collect();
        Irreducibles { join_irreducible, meet_irreducible, doubly_reducible }
    }

    pub fn doubly_reducible(&self) -> Vec<usize> {
        self.irreducibles().doubly_reducible
    }
}

fn augment(x: usize, succ: &[Vec<usize>], seen: &mut [bool], matched_right: &mut [Option<usize>]) -> bool {
    for &y in &succ[x] {
        if seen[y] {
            continue;
        }
        seen[y] = true;
        if matched_right[y].is_none_or(|x2| augment(x2, succ, seen, matched_right)) {
            matched_right[y] = Some(x);
            return true;
        }
    }
    false
}
