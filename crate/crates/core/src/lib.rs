//! Finite property lattices built from orthogonality spaces.
//!
//! The crate constructs complete atomistic ortho-lattices as polarity
//! closure systems over finite atom sets, forms the separated product of
//! two such lattices, decides the independence axioms for candidate
//! relations on a product of atom spaces, and builds a family of
//! counterexample relations and a finite-field tensor-trace lattice.

pub mod bitset;
pub mod closure;
pub mod config;
pub mod constructions;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod lattice;
pub mod orthospace;
pub mod search;
pub mod sepprod;
pub mod verify;

pub use bitset::Bits;
pub use closure::{AtomSubset, ClosureSystem};
pub use config::Limits;
pub use error::{PlatError, Result};
pub use orthospace::OrthoSpace;
