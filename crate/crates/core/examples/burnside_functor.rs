//! The decorated Burnside functor of a diagram, its coherence data and its
//! totalization.
//!
//! cargo run --example burnside_functor

use khperiodic::burnside::{compose, BurnsideCubeFunctor, Degree};
use khperiodic::cube::{build_complex, obstruction_cocycle, solve_edge_assignment, Flavor, KhovanovCube, Theory};
use khperiodic::diagram::{AnnularWord, Diagram};

fn main() -> khperiodic::Result<()> {
    let cube = KhovanovCube::new(Diagram::new(AnnularWord::parse(include_str!("trefoil.aw"))?)?)?;
    let eps = solve_edge_assignment(&obstruction_cocycle(&cube, Flavor::X)?)?;
    let f = BurnsideCubeFunctor::khovanov(&cube, &eps, true, false)?;
    println!("{} objects over {} vertices", f.total_size(), cube.vertices());
    let r = f.check_coherence();
    println!("coherence: {} faces, {} cubes, failure {:?}", r.faces, r.cubes, r.failure);
    // a composite along two edges
    let two = compose(f.edge(0b001, 0), f.edge(0b011, 1))?;
    println!("composite 011 -> 000 has {} elements", two.len());
    let odd = build_complex(&cube, Theory::Odd, Some(&eps))?;
    println!("totalization equals the odd complex: {}", f.totalize(Degree::Identity).triplets() == odd.complex.triplets());
    println!("{}", serde_json::to_string(&f.to_json()).expect("json"));
    Ok(())
}
