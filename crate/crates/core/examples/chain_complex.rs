//! The homology engine on a hand-built complex: Z -2-> Z, so H = Z/2.
//!
//! cargo run --example chain_complex

use khperiodic::homology::{homology, GradedChainComplex, Grading, Ring, SummandKey};

fn main() -> khperiodic::Result<()> {
    let g = |h| Grading { h, q: 0, k: 0 };
    let c = GradedChainComplex::from_triplets(vec![g(0), g(1)], vec![(1, 0, 2)], 1, SummandKey::Quantum);
    for ring in [Ring::Integers, Ring::Rationals, Ring::Prime(2), Ring::Prime(3)] {
        print!("{}", homology(&c, ring)?.render());
    }
    Ok(())
}
