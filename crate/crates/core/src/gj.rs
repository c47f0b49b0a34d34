//! Finite form of the Galvin–Jónsson structure theorem: a finite lattice is
//! distributive without doubly reducible elements iff it is a linear sum of
//! one-element lattices, copies of `2 x 2 x 2`, and lattices `2 x C_k`.
//!
//! Also the constructive width-two isomorphism: a modular, width-two,
//! linearly indecomposable lattice without doubly reducible elements is
//! rebuilt as `2 x C_k` one rung at a time, starting from a gadget.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{cube3, is_isomorphic, two_by_chain, Block, FiniteLattice};
use crate::properties::{distributive_witness, modular_witness};
use crate::subalgebra::{admissible_triples, generate_sublattice};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BlockTag {
    Singleton,
    Cube,
    TwoByChain,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TaggedBlock {
    #[serde(flatten)]
    pub block: Block,
    pub tag: BlockTag,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GJVerdict {
    pub distributive: bool,
    pub dr_free: bool,
    pub blocks: Vec<TaggedBlock>,
    pub passes: bool,
}

/// Tags one summand of the linear-sum decomposition.
pub fn classify_block(l: &FiniteLattice, block: &Block) -> BlockTag {
    let k = block.elements.len();
    if k == 1 {
        return BlockTag::Singleton;
    }
    let sub = match l.induced(&block.elements) {
        Ok(s) => s,
        Err(_) => return BlockTag::Other,
    };
    if k == 8 && is_isomorphic(&sub, &cube3()).is_some() {
        BlockTag::Cube
    } else if k >= 4 && k % 2 == 0 && is_isomorphic(&sub, &two_by_chain(k / 2)).is_some() {
        BlockTag::TwoByChain
    } else {
        BlockTag::Other
    }
}

/// Evaluates both sides of the theorem independently and fails if they
/// disagree.
pub fn check_theorem(l: &FiniteLattice) -> Result<GJVerdict> {
    let distributive = distributive_witness(l).is_none();
    let dr_free = l.doubly_reducible().is_empty();
    let blocks: Vec<TaggedBlock> =
        l.linear_decompose().into_iter().map(|block| TaggedBlock { tag: classify_block(l, &block), block }).collect();
    let passes = blocks.iter().all(|b| b.tag != BlockTag::Other);
    if passes != (distributive && dr_free) {
        return Err(Error::TheoremDisagreement(format!(
            "distributive = {distributive}, DR-free = {dr_free}, but block tags = {:?}",
            blocks.iter().map(|b| b.tag).collect::<Vec<_>>()
        )));
    }
    Ok(GJVerdict { distributive, dr_free, blocks, passes })
}

/// Builds an explicit isomorphism `L -> 2 x C_k` (`k = |L| / 2`), returned
/// as `map[x] = rail * k + index` in the numbering of [`two_by_chain`].
///
/// Starting from the least admissible gadget, which is a `2 x 3` by
/// modularity, the remaining elements are absorbed in ascending index order:
/// each absorbed element generates exactly one new rung together with the
/// current ladder.
pub fn constructive_iso_2xc(l: &FiniteLattice) -> Result<Vec<usize>> {
    if modular_witness(l).is_some() {
        return Err(Error::PreconditionFailed("modular"));
    }
    if l.width() != 2 {
        return Err(Error::PreconditionFailed("width 2"));
    }
    if !l.doubly_reducible().is_empty() {
        return Err(Error::PreconditionFailed("no doubly reducible elements"));
    }
    if !l.is_linearly_indecomposable() {
        return Err(Error::PreconditionFailed("linearly indecomposable"));
    }
    let n = l.len();
    let map = if n <= 4 {
        // the only candidate is the square: bottom, two atoms, top
        let atoms = l.upper_covers(l.bottom());
        let mut map = vec![0; n];
        map[l.bottom()] = 0;
        map[atoms[0]] = 1;
        map[atoms[1]] = 2;
        map[l.top()] = 3;
        map
    } else {
        absorb(l)?
    };
    verify_iso(l, &map)?;
    Ok(map)
}

fn absorb(l: &FiniteLattice) -> Result<Vec<usize>> {
    let n = l.len();
    // (rail, index) of each ladder element; rungs are kept contiguous from 0
    let mut coord: Vec<Option<(usize, usize)>> = vec![None; n];
    let (a, b, c) = admissible_triples(l).next().ok_or(Error::PreconditionFailed("a gadget exists"))?;
    let g = generate_sublattice(l, &[a, b, c]);
    let iso = if g.len() == 6 { is_isomorphic(&l.induced(&g)?, &two_by_chain(3)) } else { None };
    let iso = iso.ok_or(Error::AbsorptionFailed { element: a })?;
    for (i, &x) in g.iter().enumerate() {
        coord[x] = Some((iso[i] / 3, iso[i] % 3));
    }
    let mut rungs = 3;
    while let Some(w) =
        l.elements().find(|&w| coord[w].is_none() && l.elements().any(|y| coord[y].is_some() && l.incomparable(w, y)))
    {
        let ladder: Vec<usize> = l.elements().filter(|&y| coord[y].is_some()).collect();
        let mut seed = ladder.clone();
        seed.push(w);
        let h = generate_sublattice(l, &seed);
        let fresh: Vec<usize> = h.iter().copied().filter(|&y| coord[y].is_none()).collect();
        if fresh.len() != 2 || !l.lt(fresh[0], fresh[1]) && !l.lt(fresh[1], fresh[0]) {
            return Err(Error::AbsorptionFailed { element: w });
        }
        let (lo, hi) = if l.lt(fresh[0], fresh[1]) { (fresh[0], fresh[1]) } else { (fresh[1], fresh[0]) };
        let r = ladder.iter().filter(|&&y| coord[y].is_some_and(|(rail, _)| rail == 0) && l.lt(y, lo)).count();
        for y in &ladder {
            if let Some((rail, idx)) = coord[*y] {
                if idx >= r {
                    coord[*y] = Some((rail, idx + 1));
                }
            }
        }
        coord[lo] = Some((0, r));
        coord[hi] = Some((1, r));
        rungs += 1;
    }
    if rungs * 2 != n {
        let stray = l.elements().find(|&y| coord[y].is_none()).unwrap_or(0);
        return Err(Error::AbsorptionFailed { element: stray });
    }
    Ok(coord.iter().map(|c| c.map(|(rail, idx)| rail * rungs + idx).unwrap_or(usize::MAX)).collect())
}

fn verify_iso(l: &FiniteLattice, map: &[usize]) -> Result<()> {
    let n = l.len();
    let target = two_by_chain(n / 2);
    let mut seen = vec![false; n];
    for &m in map {
        if m >= n || seen[m] {
            return Err(Error::AbsorptionFailed { element: m.min(n) });
        }
        seen[m] = true;
    }
    for x in 0..n {
        for y in 0..n {
            if map[l.join(x, y)] != target.join(map[x], map[y]) || map[l.meet(x, y)] != target.meet(map[x], map[y]) {
                return Err(Error::AbsorptionFailed { element: x });
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WidthReport {
    pub scanned: usize,
    pub qualifying: usize,
    pub passed: bool,
}

fn structural_filter(l: &FiniteLattice, width: usize) -> bool {
    l.width() == width
        && l.is_linearly_indecomposable()
        && l.doubly_reducible().is_empty()
        && distributive_witness(l).is_none()
}

/// Every linearly indecomposable, distributive, DR-free lattice of width
/// three is the cube.
pub fn verify_prop_width3(lattices: &[FiniteLattice]) -> Result<WidthReport> {
    if !structural_filter(&cube3(), 3) {
        return Err(Error::CounterexampleFound("the cube does not qualify".into()));
    }
    let hits: Vec<&FiniteLattice> = lattices.par_iter().filter(|l| structural_filter(l, 3)).collect();
    for l in &hits {
        if is_isomorphic(l, &cube3()).is_none() {
            return Err(Error::CounterexampleFound(l.to_json()));
        }
    }
    Ok(WidthReport { scanned: lattices.len(), qualifying: hits.len(), passed: true })
}

/// Width two: the qualifying lattices are exactly the `2 x C_k`, and the
/// constructive isomorphism succeeds on each.
pub fn verify_prop_width2(lattices: &[FiniteLattice]) -> Result<WidthReport> {
    let outcomes: Vec<Result<bool>> = lattices
        .par_iter()
        .map(|l| {
            let qualifies = l.width() == 2
                && l.is_linearly_indecomposable()
                && l.doubly_reducible().is_empty()
                && modular_witness(l).is_none();
            let is_ladder = l.len() >= 4 && l.len() % 2 == 0 && is_isomorphic(l, &two_by_chain(l.len() / 2)).is_some();
            if qualifies != is_ladder {
                return Err(Error::CounterexampleFound(l.to_json()));
            }
            if qualifies {
                constructive_iso_2xc(l)?;
            }
            Ok(qualifies)
        })
        .collect();
    let mut qualifying = 0;
    for o in outcomes {
        qualifying += o? as usize;
    }
    Ok(WidthReport { scanned: lattices.len(), qualifying, passed: true })
}

/// Runs [`check_theorem`] on every lattice.
pub fn verify_theorem(lattices: &[FiniteLattice]) -> Result<WidthReport> {
    let results: Vec<Result<bool>> = lattices.par_iter().map(|l| check_theorem(l).map(|v| v.passes)).collect();
    let mut qualifying = 0;
    for r in results {
        qualifying += r? as usize;
    }
    Ok(WidthReport { scanned: lattices.len(), qualifying, passed: true })
}
