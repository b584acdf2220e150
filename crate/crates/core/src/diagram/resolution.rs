use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::layout::{trace_all, Layout, Site, Smoothing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Circle {
    /// Signed number of seam crossings; `0` for circles bounding a disk in
    /// the annulus.
    pub winding: i32,
    /// Lowest strand position at which the circle crosses the seam.
    pub seam_position: Option<usize>,
    pub first_segment: usize,
}

impl Circle {
    pub fn is_nontrivial(&self) -> bool {
        self.winding != 0
    }

    fn key(&self) -> (usize, usize, i32) {
        (
            self.seam_position.unwrap_or(usize::MAX),
            self.first_segment,
            self.winding,
        )
    }
}

/// How circles are numbered within each resolution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CircleOrder {
    /// Lexicographic on (lowest seam height, first segment, winding).
    #[default]
    Canonical,
    /// A seeded random permutation per vertex.
    Shuffled(u64),
}

#[derive(Clone, Debug)]
pub struct Resolution {
    pub vertex: u32,
    circles: Vec<Circle>,
    owner: Vec<u16>,
}

impl Resolution {
    pub(crate) fn compute(layout: &Layout, vertex: u32, order: CircleOrder) -> Self {
        let partner = layout.partner_for_vertex(vertex);
        Self::from_partner(layout, &partner, vertex, order)
    }

    pub(crate) fn from_partner(
        layout: &Layout,
        partner: &[u32],
        vertex: u32,
        order: CircleOrder,
    ) -> Self {
        let (raw_owner, traces) = trace_all(layout, partner);
        let raw: Vec<Circle> = traces
            .iter()
            .map(|t| {
                let seam_position = t
                    .steps
                    .iter()
                    .filter(|(s, _)| layout.in_seam_slice(*s as usize))
                    .map(|(s, _)| *s as usize + 1)
                    .min();
                let first_segment = t.steps.iter().map(|(s, _)| *s as usize).min().unwrap();
                Circle {
                    winding: t.winding,
                    seam_position,
                    first_segment,
                }
            })
            .collect();
        let mut perm: Vec<usize> = (0..raw.len()).collect();
        perm.sort_by_key(|&i| raw[i].key());
        if let CircleOrder::Shuffled(seed) = order {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (vertex as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
            perm.shuffle(&mut rng);
        }
        // perm[new] = old
        let mut rank = vec![0u16; raw.len()];
        for (new, &old) in perm.iter().enumerate() {
            rank[old] = new as u16;
        }
        let circles = perm.iter().map(|&old| raw[old]).collect();
        let owner = raw_owner.iter().map(|&o| rank[o as usize]).collect();
        Resolution {
            vertex,
            circles,
            owner,
        }
    }

    pub fn circles(&self) -> &[Circle] {
        &self.circles
    }

    pub fn len(&self) -> usize {
        self.circles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.circles.is_empty()
    }

    /// Circle containing a segment.
    pub fn circle_of_segment(&self, seg: usize) -> usize {
        self.owner[seg] as usize
    }

    pub(crate) fn circle_of_end(&self, end: u32) -> usize {
        self.owner[(end / 2) as usize] as usize
    }

    /// Bitmask of nontrivial circles.
    pub fn nontrivial_mask(&self) -> u32 {
        self.circles
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_nontrivial())
            .fold(0, |m, (i, _)| m | 1 << i)
    }
}

/// Which part of a smoothing an arc endpoint sits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum JunctionKind {
    Lower,
    Upper,
    TurnLeft,
    TurnRight,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Junction {
    pub kind: JunctionKind,
    pub ends: (u32, u32),
}

impl Junction {
    /// Whether the arc lies to the left of a walk leaving its segment by `exit`.
    pub fn arc_on_left(&self, exit: u32) -> bool {
        let first = exit == self.ends.0;
        match self.kind {
            JunctionKind::Lower => first,
            JunctionKind::Upper => !first,
            JunctionKind::TurnLeft => !first,
            JunctionKind::TurnRight => first,
        }
    }
}

/// Tail and head of the surgery arc at a smoothed crossing. `forward`
/// points the turnback arc left to right, and the horizontal arc upward for
/// a positive crossing (downward for a negative one); the two arcs of a
/// crossing are related by a clockwise quarter turn.
pub(crate) fn arc_endpoints(site: &Site, sm: Smoothing, forward: bool) -> (Junction, Junction) {
    let lower = Junction {
        kind: JunctionKind::Lower,
        ends: (site.ll, site.lr),
    };
    let upper = Junction {
        kind: JunctionKind::Upper,
        ends: (site.ul, site.ur),
    };
    let tl = Junction {
        kind: JunctionKind::TurnLeft,
        ends: (site.ll, site.ul),
    };
    let tr = Junction {
        kind: JunctionKind::TurnRight,
        ends: (site.lr, site.ur),
    };
    let (t, h) = match sm {
        Smoothing::Horizontal => match site.sign {
            super::CrossingSign::Positive => (lower, upper),
            super::CrossingSign::Negative => (upper, lower),
        },
        Smoothing::Turnback => (tl, tr),
        Smoothing::Crossed => unreachable!("arcs live on smoothings"),
    };
    if forward {
        (t, h)
    } else {
        (h, t)
    }
}
