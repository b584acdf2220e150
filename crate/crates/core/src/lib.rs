//! Khovanov homology, odd Khovanov homology and their annular versions for
//! links in the thickened annulus, with tools for periodic links: cyclic
//! covers, the rotation action, fixed-point complexes, Burnside functors
//! with external actions, Smith-type rank inequalities and the Tate
//! spectral sequence.

pub mod burnside;
pub mod cli;
pub mod cube;
pub mod diagram;
pub mod error;
pub mod homology;
pub mod periodic;

pub use error::{Error, Result};
