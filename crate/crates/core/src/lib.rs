//! Executable lattice theory: finite lattices and their properties,
//! gadgets, Jónsson's D-sequence, the Galvin–Jónsson structure theorem for
//! finite distributive lattices, Whitman's free-lattice word problem, ladder
//! splittings, and an exhaustive enumerator of small lattices.

pub mod enumerate;
pub mod error;
pub mod gj;
pub mod jonsson;
pub mod ladder;
pub mod lattice;
pub mod properties;
pub mod subalgebra;
pub mod term;

pub use error::{Error, Result};
pub use lattice::FiniteLattice;
