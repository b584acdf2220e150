//! Ladybug faces and their X/Y labels; reversing the arrow at one of the
//! two crossings swaps the label.
//!
//! cargo run --example ladybug

use khperiodic::cube::{face_type, KhovanovCube};
use khperiodic::diagram::{classify_ladybug, AnnularWord, Diagram, FaceType};

fn main() -> khperiodic::Result<()> {
    let diagram = Diagram::new(AnnularWord::parse("strands 2\nx+ 1\nx- 1\nx+ 1\n")?)?;
    let cube = KhovanovCube::new(diagram.clone())?;
    let n = cube.crossings();
    for w in 0..cube.vertices() {
        for c2 in 0..n {
            for c1 in 0..c2 {
                if w >> c1 & 1 == 1 || w >> c2 & 1 == 1 {
                    continue;
                }
                if !matches!(face_type(&cube, w, c1, c2)?, FaceType::X | FaceType::Y) {
                    continue;
                }
                let mut arrows = diagram.orientation().arrows.clone();
                arrows[c1] = !arrows[c1];
                let flipped = diagram.clone().with_arrows(arrows);
                println!(
                    "face at {w:03b} over crossings {c1},{c2}: {:?}, with crossing {c1} reversed: {:?}",
                    classify_ladybug(&diagram, w, c1, c2)?,
                    classify_ladybug(&flipped, w, c1, c2)?
                );
            }
        }
    }
    Ok(())
}
