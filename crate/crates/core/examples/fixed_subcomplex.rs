//! The subcomplex of rotation-invariant generators upstairs against the
//! annular complex of the quotient.
//!
//! cargo run --example fixed_subcomplex

use khperiodic::cube::{build_complex, Flavor, Theory};
use khperiodic::diagram::AnnularWord;
use khperiodic::homology::Ring;
use khperiodic::periodic::{fixed_subcomplex, ChainAction, LiftOrder, PeriodicPair};

fn main() -> khperiodic::Result<()> {
    let word = AnnularWord::parse(include_str!("trefoil.aw"))?;
    let pair = PeriodicPair::new(&word, 3)?;
    let up = pair.equivariant_edge_assignment(Flavor::X)?;
    let down = pair.quotient_edge_assignment(&up);
    let cover = build_complex(&pair.cover, Theory::Odd, Some(&up))?;
    ChainAction::new(&pair, true).verify(&cover.complex)?;
    println!("rotation is a chain map of order 3 on {} generators", cover.complex.len());
    let fx = fixed_subcomplex(&pair, Theory::Odd, Some(&up), LiftOrder::Ascending)?;
    let quotient = build_complex(&pair.base, Theory::AnnularOdd, Some(&down))?;
    println!("mismatched entries: {}", fx.compare(&quotient).len());
    print!("{}", quotient.homology(Ring::Prime(3))?.render());
    Ok(())
}
