//! The rotation acting on the Burnside functor of a cover, and the
//! fixed-point functor.
//!
//! cargo run --example external_action

use khperiodic::burnside::{fixed_point_functor, BurnsideCubeFunctor, ExternalAction, Subgroup};
use khperiodic::cube::Flavor;
use khperiodic::diagram::AnnularWord;
use khperiodic::periodic::{invariant_lifts, LiftOrder, PeriodicPair};

fn main() -> khperiodic::Result<()> {
    let word = AnnularWord::parse("strands 2\nx+ 1\nx- 1\n")?;
    let pair = PeriodicPair::new(&word, 3)?;
    let up = pair.equivariant_edge_assignment(Flavor::X)?;
    let f = BurnsideCubeFunctor::khovanov(&pair.cover, &up, true, false)?;
    let act = ExternalAction::new(&f, &pair)?;
    let r = act.verify(&f);
    println!("group law {}, E-1' {}, E-2' {}", r.group_law, r.e1.is_none(), r.e2.is_none());
    println!("{} fixed objects, all with decoration +1: {}", r.fixed_objects, r.nonsingular);
    let fx = fixed_point_functor(&f, &act, &pair, Subgroup::Whole)?;
    println!("fixed objects per base vertex: {:?}", fx.object_counts());
    let q = BurnsideCubeFunctor::khovanov(&pair.base, &pair.quotient_edge_assignment(&up), true, true)?;
    let diff = fx.compare_with_quotient(&f, &q, &pair, &invariant_lifts(&pair, LiftOrder::Ascending));
    println!("fixed-point functor vs quotient annular functor: {}", diff.as_deref().unwrap_or("isomorphic"));
    Ok(())
}
