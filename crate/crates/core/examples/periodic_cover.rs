//! A cyclic cover, its rotation and the lifts of base generators.
//!
//! cargo run --example periodic_cover

use khperiodic::cube::vertex_string;
use khperiodic::diagram::AnnularWord;
use khperiodic::periodic::{expected_lift_grading, invariant_lifts, LiftOrder, PeriodicPair};

fn main() -> khperiodic::Result<()> {
    let word = AnnularWord::parse(include_str!("one_crossing.aw"))?;
    let pair = PeriodicPair::new(&word, 3)?;
    print!("cover word:\n{}", pair.cover.diagram().word());
    let rot = pair.rotation();
    let v = 0b1;
    println!(
        "rotation sends crossing 0 to {} and vertex {} to {}",
        rot.crossing(0),
        vertex_string(v, pair.cover.crossings()),
        vertex_string(rot.vertex(v), pair.cover.crossings())
    );
    for l in invariant_lifts(&pair, LiftOrder::Ascending) {
        let g = pair.base.grading(l.base);
        println!(
            "base {:?} {:?} -> cover label {:b}, sign {:+}, grading {:?} (expected {:?})",
            l.base,
            g,
            l.cover.label,
            l.sign,
            pair.cover.grading(l.cover),
            expected_lift_grading(g, pair.p)
        );
    }
    Ok(())
}
