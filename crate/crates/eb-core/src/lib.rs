//! Finite commutative algebra with exact sequence constants.
//!
//! The crate builds finite commutative semigroups and unitary rings from
//! dense tables, analyzes ring structure (units, radicals, maximal ideals,
//! semisimple decomposition), and computes Erdős–Burgess and Davenport
//! constants exactly with certified extremal witnesses. A small expression
//! language (`dsl`) describes rings such as `Z/12`, `GF(9)`, `bool(3)`,
//! `Z/2[x]/(x^2+x+1)`, and products thereof.

pub mod bitset;
pub mod dsl;
pub mod error;
pub mod ring;
pub mod semigroup;
pub mod solver;
pub mod structure;

pub use bitset::ElementSet;
pub use error::{Error, Result};
pub use ring::FiniteRing;
pub use semigroup::{ElementId, FiniteSemigroup};
pub use solver::{EbResult, EbValue, SearchConfig};
pub use structure::StructureReport;
