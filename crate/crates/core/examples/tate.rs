//! Tate homology of the rotation action on a cover, slice by slice.
//!
//! cargo run --example tate

use khperiodic::cube::Flavor;
use khperiodic::diagram::AnnularWord;
use khperiodic::periodic::{tate_verify, PeriodicPair};

fn main() -> khperiodic::Result<()> {
    let word = AnnularWord::parse(include_str!("trefoil.aw"))?;
    let pair = PeriodicPair::new(&word, 3)?;
    for odd in [false, true] {
        let r = tate_verify(&pair, odd, Flavor::X, Some(6))?;
        println!("{} theory: holds {}", r.theory, r.holds);
        for s in &r.summands {
            println!("  (q={}, k={}): {:?}, quotient {}", s.tate.q, s.tate.k, s.tate.window, s.expected);
        }
    }
    Ok(())
}
