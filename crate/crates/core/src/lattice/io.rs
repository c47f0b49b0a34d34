use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::{FiniteLattice, DEFAULT_MAX_N};
use crate::error::{Error, Result};

/// On-disk lattice format: `{"n": 5, "covers": [[0,1], ...], "names": [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeFile {
    pub n: usize,
    pub covers: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl LatticeFile {
    pub fn from_lattice(l: &FiniteLattice) -> Self {
        Self {
            n: l.len(),
            covers: l.covers().iter().map(|&(a, b)| [a, b]).collect(),
            names: l.names().map(<[String]>::to_vec),
        }
    }

    pub fn into_lattice(self, cap: usize) -> Result<FiniteLattice> {
        let covers: Vec<(usize, usize)> = self.covers.iter().map(|&[a, b]| (a, b)).collect();
        let l = FiniteLattice::from_covers_capped(self.n, &covers, cap)?;
        match self.names {
            Some(names) if names.len() != self.n => {
                Err(Error::InvalidInput(format!("expected {} names, found {}", self.n, names.len())))
            }
            Some(names) => Ok(l.with_names(names)),
            None => Ok(l),
        }
    }
}

impl FiniteLattice {
    /// Parses and validates the JSON lattice format with the default cap.
    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_json_capped(text, DEFAULT_MAX_N)
    }

    pub fn from_json_capped(text: &str, cap: usize) -> Result<Self> {
        let file: LatticeFile = serde_json::from_str(text)?;
        // reject absurd sizes before allocating anything proportional to n
        if file.n > cap {
            return Err(Error::SizeCap { n: file.n, cap });
        }
        file.into_lattice(cap)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&LatticeFile::from_lattice(self)).expect("lattice file serializes")
    }
}

/// Graphviz rendering: one node per element, grouped into ranks by height,
/// one edge per cover drawn bottom to top.
pub fn to_dot(l: &FiniteLattice) -> String {
    let heights = l.heights();
    let max_h = heights.iter().copied().max().unwrap_or(0);
    let mut out = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=plaintext];\n");
    for x in l.elements() {
        let _ = writeln!(out, "  n{x} [label=\"{}\"];", l.name(x).replace('"', "\\\""));
    }
    for h in 0..=max_h {
        let row: Vec<String> = l.elements().filter(|&x| heights[x] == h).map(|x| format!("n{x}")).collect();
        let _ = writeln!(out, "  {{ rank=same; {} }}", row.join("; "));
    }
    for &(a, b) in l.covers() {
        let _ = writeln!(out, "  n{a} -> n{b} [dir=none];");
    }
    out.push_str("}\n");
    out
}
