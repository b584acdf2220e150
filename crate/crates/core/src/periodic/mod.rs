//! Periodic links as p-fold covers of annular words: the rotation action on
//! chains, lifts of base generators, the fixed complex and the Smith
//! inequality.

mod action;
mod fixed;
mod lift;
mod pair;
mod smith;

pub(crate) use action::rotate_generator;
pub use action::{rotation_sign, ChainAction};
pub use fixed::{fixed_subcomplex, FixedComplex, Mismatch};
pub use lift::{circle_lifts, expected_lift_grading, invariant_lifts, InvariantLift, LiftOrder};
pub use pair::{PairOptions, PeriodicPair};
pub use smith::{
    smith_verify, tate_verify, PeriodicComplexes, SmithEntry, SmithOptions, SmithReport, TateComparison, TateReport,
};
