//! Generated sublattices, gadgets, and the nine-element free lattice FL(P)
//! over the poset `P = {A, B < C}`.
//!
//! A gadget `G(a; b, c)` is the sublattice generated by `a, b, c` where
//! `b < c` and `a` is incomparable to both. It is the image of FL(P) under
//! `A -> a, B -> b, C -> c`, so it is determined by which of the nine FL(P)
//! elements collapse; that equality partition is the gadget's fingerprint.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{canonical_code, FiniteLattice};

/// The nine FL(P) elements in fingerprint order.
pub const FLP_TERMS: [&str; 9] = ["A", "B", "C", "AB", "AC", "AC+B", "(A+B)C", "A+B", "A+C"];

/// Least sublattice containing `seed`, ascending.
pub fn generate_sublattice(l: &FiniteLattice, seed: &[usize]) -> Vec<usize> {
    let mut member = vec![false; l.len()];
    let mut set: Vec<usize> = Vec::new();
    for &x in seed {
        if !member[x] {
            member[x] = true;
            set.push(x);
        }
    }
    // every new element is combined with everything seen so far
    let mut i = 0;
    while i < set.len() {
        let x = set[i];
        for j in 0..=i {
            let y = set[j];
            for z in [l.join(x, y), l.meet(x, y)] {
                if !member[z] {
                    member[z] = true;
                    set.push(z);
                }
            }
        }
        i += 1;
    }
    set.sort_unstable();
    set
}

/// Images of the nine FL(P) elements at `A = a, B = b, C = c`, in
/// [`FLP_TERMS`] order.
pub fn flp_images(l: &FiniteLattice, a: usize, b: usize, c: usize) -> [usize; 9] {
    let ab = l.meet(a, b);
    let ac = l.meet(a, c);
    [a, b, c, ab, ac, l.join(ac, b), l.meet(l.join(a, b), c), l.join(a, b), l.join(a, c)]
}

/// Equality partition of nine images as a restricted growth string: term
/// `i` gets the number of the first term with the same image.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Fingerprint(pub [u8; 9]);

impl Fingerprint {
    pub fn of(images: &[usize; 9]) -> Self {
        let mut out = [0u8; 9];
        let mut seen: Vec<usize> = Vec::new();
        for (i, &x) in images.iter().enumerate() {
            out[i] = match seen.iter().position(|&s| s == x) {
                Some(p) => p as u8,
                None => {
                    seen.push(x);
                    (seen.len() - 1) as u8
                }
            };
        }
        Fingerprint(out)
    }

    /// The fingerprint of the dual gadget, obtained by applying the duality
    /// of FL(P) that fixes A and swaps B with C.
    pub fn dual(&self) -> Self {
        // A B C AB AC AC+B (A+B)C A+B A+C  ->  A C B A+C A+B (A+B)C AC+B AC AB
        const PERM: [usize; 9] = [0, 2, 1, 8, 7, 6, 5, 4, 3];
        let mut images = [0usize; 9];
        for i in 0..9 {
            images[i] = self.0[PERM[i]] as usize;
        }
        Fingerprint::of(&images)
    }

    pub fn classes(&self) -> usize {
        self.0.iter().map(|&c| c as usize + 1).max().unwrap_or(0)
    }
}

impl std::fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for d in self.0 {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GadgetReport {
    pub generators: [usize; 3],
    pub generated: Vec<usize>,
    pub size: usize,
    pub images: [usize; 9],
    pub fingerprint: Fingerprint,
    pub iso_class: String,
}

/// Checks `b < c`, `a || b`, `a || c`.
pub fn check_admissible(l: &FiniteLattice, a: usize, b: usize, c: usize) -> Result<()> {
    for x in [a, b, c] {
        l.check_index(x)?;
    }
    if !l.lt(b, c) {
        return Err(Error::BadConfiguration(format!("b = {b} is not strictly below c = {c}")));
    }
    if !l.incomparable(a, b) {
        return Err(Error::BadConfiguration(format!("a = {a} is comparable to b = {b}")));
    }
    if !l.incomparable(a, c) {
        return Err(Error::BadConfiguration(format!("a = {a} is comparable to c = {c}")));
    }
    Ok(())
}

pub fn is_admissible(l: &FiniteLattice, a: usize, b: usize, c: usize) -> bool {
    l.lt(b, c) && l.incomparable(a, b) && l.incomparable(a, c)
}

pub fn gadget(l: &FiniteLattice, a: usize, b: usize, c: usize) -> Result<GadgetReport> {
    check_admissible(l, a, b, c)?;
    let images = flp_images(l, a, b, c);
    let generated = generate_sublattice(l, &[a, b, c]);
    let sub = l.induced(&generated)?;
    Ok(GadgetReport {
        generators: [a, b, c],
        size: generated.len(),
        generated,
        images,
        fingerprint: Fingerprint::of(&images),
        iso_class: canonical_code(&sub).to_hex(),
    })
}

/// All admissible triples `(a, b, c)` in lexicographic order.
pub fn admissible_triples(l: &FiniteLattice) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
    l.elements().flat_map(move |a| {
        l.elements().flat_map(move |b| l.elements().filter_map(move |c| is_admissible(l, a, b, c).then_some((a, b, c))))
    })
}

/// The free lattice FL(P), transcribed from its Hasse diagram. Indices:
/// `0 AB, 1 AC, 2 B, 3 A, 4 AC+B, 5 (A+B)C, 6 C, 7 A+B, 8 A+C`.
pub fn flp_nine() -> FiniteLattice {
    let names = ["AB", "AC", "B", "A", "AC+B", "(A+B)C", "C", "A+B", "A+C"];
    let covers = [(0, 1), (0, 2), (1, 3), (1, 4), (2, 4), (4, 5), (5, 7), (5, 6), (3, 7), (7, 8), (6, 8)];
    FiniteLattice::from_covers(9, &covers).expect("FL(P) is a lattice").with_names(names.map(String::from).to_vec())
}

/// Position in [`flp_nine`] of each term in [`FLP_TERMS`] order.
pub const FLP_INDEX: [usize; 9] = [3, 2, 6, 0, 1, 4, 5, 7, 8];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniversalReport {
    pub triples: usize,
    pub passed: bool,
}

/// For every admissible triple, checks that sending `A, B, C` to the triple
/// extends to a surjective lattice homomorphism from FL(P) onto the gadget.
pub fn verify_universal(l: &FiniteLattice) -> Result<UniversalReport> {
    let flp = flp_nine();
    let mut triples = 0;
    for (a, b, c) in admissible_triples(l) {
        triples += 1;
        let images = flp_images(l, a, b, c);
        let mut phi = [0usize; 9];
        for (t, &idx) in FLP_INDEX.iter().enumerate() {
            phi[idx] = images[t];
        }
        let hom = flp.elements().all(|x| {
            flp.elements()
                .all(|y| phi[flp.join(x, y)] == l.join(phi[x], phi[y]) && phi[flp.meet(x, y)] == l.meet(phi[x], phi[y]))
        });
        let mut image: Vec<usize> = phi.to_vec();
        image.sort_unstable();
        image.dedup();
        if !hom || image != generate_sublattice(l, &[a, b, c]) {
            return Err(Error::UniversalityFailure { a, b, c });
        }
    }
    Ok(UniversalReport { triples, passed: true })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Census {
    pub lattices: usize,
    pub gadgets: usize,
    /// `(fingerprint, iso class) -> number of gadgets`.
    #[serde(serialize_with = "class_records")]
    pub classes: BTreeMap<(String, String), usize>,
    pub iso_classes: usize,
    pub fingerprints: usize,
}

fn class_records<S: serde::Serializer>(m: &BTreeMap<(String, String), usize>, s: S) -> Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Record<'a> {
        fingerprint: &'a str,
        iso_class: &'a str,
        count: usize,
    }
    s.collect_seq(m.iter().map(|((f, i), &count)| Record { fingerprint: f, iso_class: i, count }))
}

/// Tallies every gadget of every lattice; the merged result does not depend
/// on how the work is split across threads.
pub fn gadget_census(lattices: &[FiniteLattice]) -> Census {
    let partial: Vec<BTreeMap<(String, String), usize>> = lattices
        .par_iter()
        .map(|l| {
            let mut m = BTreeMap::new();
            for (a, b, c) in admissible_triples(l) {
                let r = gadget(l, a, b, c).expect("admissible triple");
                *m.entry((r.fingerprint.to_string(), r.iso_class)).or_insert(0) += 1;
            }
            m
        })
        .collect();
    let mut classes = BTreeMap::new();
    for m in partial {
        for (k, v) in m {
            *classes.entry(k).or_insert(0) += v;
        }
    }
    let gadgets = classes.values().sum();
    let iso_classes = classes.keys().map(|(_, i)| i).collect::<std::collections::BTreeSet<_>>().len();
    let fingerprints = classes.keys().map(|(f, _)| f).collect::<std::collections::BTreeSet<_>>().len();
    Census { lattices: lattices.len(), gadgets, classes, iso_classes, fingerprints }
}
