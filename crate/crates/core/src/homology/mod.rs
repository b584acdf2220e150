//! Chain complexes, ranks over prime fields, integral homology and the
//! Tate complex of a cyclic action.

mod complex;
pub mod linalg;
mod ranks;
mod tate;

pub use complex::{GradedChainComplex, Grading, SummandKey};
pub use linalg::BitMatrix;
pub use ranks::{homology, is_prime, GradedRanks, RankEntry, Ring};
pub use tate::{tate_homology, SignedPermutation, TateSummand};
