//! Smith inequalities for the 3-fold and 5-fold covers of a one-crossing
//! word, even and odd.
//!
//! cargo run --example smith_inequality

use khperiodic::diagram::AnnularWord;
use khperiodic::periodic::{smith_verify, PeriodicPair, SmithOptions};

fn main() -> khperiodic::Result<()> {
    let word = AnnularWord::parse(include_str!("one_crossing.aw"))?;
    for p in [3, 5] {
        let pair = PeriodicPair::new(&word, p)?;
        for odd in [false, true] {
            let r = smith_verify(&pair, odd, &SmithOptions::default())?;
            print!("{}", r.render());
        }
    }
    Ok(())
}
