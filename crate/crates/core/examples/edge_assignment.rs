//! Face types, the obstruction cocycle and an edge assignment solving it.
//!
//! cargo run --example edge_assignment

use khperiodic::cube::{obstruction_cocycle, solve_edge_assignment, solve_edge_assignment_dense, Flavor, KhovanovCube};
use khperiodic::diagram::{AnnularWord, Diagram};

fn main() -> khperiodic::Result<()> {
    let word = AnnularWord::parse(include_str!("figure_eight.aw"))?;
    let cube = KhovanovCube::new(Diagram::new(word)?)?;
    for flavor in [Flavor::X, Flavor::Y] {
        let obs = obstruction_cocycle(&cube, flavor)?;
        obs.check_cocycle()?;
        println!("{flavor:?}: face types {:?}", obs.face_types().counts());
        let eps = solve_edge_assignment(&obs)?;
        let dense = solve_edge_assignment_dense(&obs)?;
        let flips = eps.edges().filter(|&(u, c)| eps.get(u, c) < 0).count();
        println!(
            "  propagation: {flips} of {} edges negative; dense solver solves: {}",
            eps.edges().count(),
            dense.solves(&obs)
        );
        // any gauge change is another solution
        println!("  twisted solution still solves: {}", eps.twisted(7).solves(&obs));
    }
    Ok(())
}
