use serde::Serialize;

use super::pair::PeriodicPair;
use crate::cube::{sort_descending, KhGenerator};
use crate::homology::Grading;

/// Order in which the `p` lifts of a trivial circle are wedged together.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum LiftOrder {
    /// `ã_1 ∧ ... ∧ ã_p`.
    #[default]
    Ascending,
    /// `ã_p ∧ ... ∧ ã_1`. Differs from `Ascending` by `(-1)^{p(p-1)/2}` per
    /// trivial circle, so for `p = 3` it does not intertwine differentials.
    Descending,
}

/// One invariant generator of the cover: the lift of a base generator,
/// `lift = sign * (cover basis element)`. The sign only matters in odd
/// theories.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantLift {
    pub base: KhGenerator,
    pub cover: KhGenerator,
    pub sign: i8,
}

/// Lifts of the circles of `D_u` in order: one circle for an essential
/// circle, `p` circles `ã_1, ..., ã_p` for a trivial one. `ã_1` is the
/// first lift counterclockwise from the cover seam that does not cross it.
pub fn circle_lifts(pair: &PeriodicPair, u: u32) -> Vec<Vec<usize>> {
    let rot = pair.rotation();
    let base = pair.base.resolution(u);
    let up = pair.cover.resolution(rot.diagonal(u));
    base.circles()
        .iter()
        .map(|c| {
            let mut seg = c.first_segment;
            if c.is_nontrivial() {
                return vec![up.circle_of_segment(seg)];
            }
            if c.seam_position.is_some() {
                seg = rot.segment(seg);
            }
            (0..pair.p)
                .map(|_| {
                    let circ = up.circle_of_segment(seg);
                    seg = rot.segment(seg);
                    circ
                })
                .collect()
        })
        .collect()
}

/// The lift of every base generator at the invariant vertices of the cover.
/// Odd signs compare the wedge written circle by circle in descending base
/// order with the descending wedge of the cover basis.
pub fn invariant_lifts(pair: &PeriodicPair, order: LiftOrder) -> Vec<InvariantLift> {
    let rot = pair.rotation();
    let mut out = Vec::with_capacity(pair.base.generator_count());
    for u in 0..pair.base.vertices() {
        let lifts = circle_lifts(pair, u);
        let up = rot.diagonal(u);
        for g in pair.base.generators_at(u) {
            let mut seq = Vec::new();
            for i in (0..lifts.len()).rev() {
                if g.label >> i & 1 == 0 {
                    continue;
                }
                match order {
                    LiftOrder::Descending => seq.extend(lifts[i].iter().rev().map(|&c| c as u8)),
                    LiftOrder::Ascending => seq.extend(lifts[i].iter().map(|&c| c as u8)),
                }
            }
            let (label, sign) = sort_descending(&seq).expect("lifts are distinct circles");
            out.push(InvariantLift {
                base: g,
                cover: KhGenerator { vertex: up, label },
                sign: sign as i8,
            });
        }
    }
    out
}

/// The grading a lift should have: `(p h, p q - (p - 1) k, k)`.
pub fn expected_lift_grading(g: Grading, p: u32) -> Grading {
    let p = p as i32;
    Grading {
        h: p * g.h,
        q: p * g.q - (p - 1) * g.k,
        k: g.k,
    }
}
