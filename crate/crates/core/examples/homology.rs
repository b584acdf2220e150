//! Khovanov homology of the trefoil in all four theories.
//!
//! cargo run --example homology

use khperiodic::cube::{homology_of_word, Theory};
use khperiodic::diagram::AnnularWord;
use khperiodic::homology::Ring;

fn main() -> khperiodic::Result<()> {
    let trefoil = AnnularWord::parse(include_str!("trefoil.aw"))?;
    for theory in Theory::ALL {
        for ring in [Ring::Rationals, Ring::Integers, Ring::Prime(2)] {
            let r = homology_of_word(&trefoil, theory, ring)?;
            println!("{theory} over {ring}: total rank {}", r.total_rank());
            print!("{}", r.render());
        }
    }
    Ok(())
}
