use rayon::prelude::*;
use serde::Serialize;

use crate::diagram::layout::Smoothing;
use crate::diagram::{Diagram, Resolution};
use crate::error::{Error, Result};
use crate::homology::Grading;

use super::exterior::sort_descending;

/// Largest cube handled when every resolution is cached.
pub const MAX_CUBE_CROSSINGS: usize = 20;

/// A Khovanov generator: a vertex and the set of circles carrying the
/// monomial variable (the minus label), as a bitmask in circle order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct KhGenerator {
    pub vertex: u32,
    pub label: u32,
}

/// Circle-level description of one edge of the cube.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Surgery {
    Merge { a1: u8, a2: u8, a: u8 },
    /// `a1` is the tail of the surgery arc in the target resolution.
    Split { a: u8, a1: u8, a2: u8 },
}

/// The edge from `source` (0 at `crossing`) to `target` (1 at `crossing`).
#[derive(Clone, Debug)]
pub struct EdgeMap {
    pub source: u32,
    pub target: u32,
    pub crossing: usize,
    pub surgery: Surgery,
    circle_map: Vec<u8>,
}

impl EdgeMap {
    fn image_mask(&self, x: u32) -> u32 {
        let mut m = 0;
        let mut bits = x;
        while bits != 0 {
            let i = bits.trailing_zeros();
            bits &= bits - 1;
            m |= 1 << self.circle_map[i as usize];
        }
        m
    }

    /// The even map: multiplication at merges, comultiplication at splits.
    pub fn even(&self, x: u32, out: &mut Vec<(u32, i32)>) {
        match self.surgery {
            Surgery::Merge { a1, a2, .. } => {
                if x >> a1 & 1 == 1 && x >> a2 & 1 == 1 {
                    return;
                }
                out.push((self.image_mask(x), 1));
            }
            Surgery::Split { a, a1, a2 } => {
                let base = self.image_mask(x & !(1 << a));
                if x >> a & 1 == 1 {
                    out.push((base | 1 << a1 | 1 << a2, 1));
                } else {
                    out.push((base | 1 << a1, 1));
                    out.push((base | 1 << a2, 1));
                }
            }
        }
    }

    /// The odd map before edge signs: exterior identification at merges,
    /// left multiplication by `a1 - a2` at splits. Wedges are written in
    /// descending circle order.
    pub fn odd(&self, x: u32, out: &mut Vec<(u32, i32)>) {
        let mut seq = [0u8; 33];
        let mut len = 1;
        for i in (0..32).rev() {
            if x >> i & 1 == 1 {
                seq[len] = self.circle_map[i as usize];
                len += 1;
            }
        }
        match self.surgery {
            Surgery::Merge { .. } => {
                if let Some((m, s)) = sort_descending(&seq[1..len]) {
                    out.push((m, s));
                }
            }
            Surgery::Split { a1, a2, .. } => {
                for (head, coef) in [(a1, 1), (a2, -1)] {
                    seq[0] = head;
                    if let Some((m, s)) = sort_descending(&seq[..len]) {
                        out.push((m, coef * s));
                    }
                }
            }
        }
    }
}

/// All resolutions of a diagram, with generator numbering: vertex-major,
/// labels in increasing bitmask order within a vertex.
#[derive(Clone, Debug)]
pub struct KhovanovCube {
    diagram: Diagram,
    resolutions: Vec<Resolution>,
    offsets: Vec<usize>,
}

impl KhovanovCube {
    pub fn new(diagram: Diagram) -> Result<Self> {
        let n = diagram.crossings();
        if n > MAX_CUBE_CROSSINGS {
            return Err(Error::TooLarge(n, MAX_CUBE_CROSSINGS));
        }
        let resolutions: Vec<Resolution> = (0..1u32 << n)
            .into_par_iter()
            .map(|v| diagram.resolve(v))
            .collect();
        if let Some(r) = resolutions.iter().find(|r| r.len() > 30) {
            return Err(Error::TooManyCircles(r.len()));
        }
        let mut offsets = Vec::with_capacity(resolutions.len() + 1);
        let mut acc = 0usize;
        for r in &resolutions {
            offsets.push(acc);
            acc += 1usize << r.len();
        }
        offsets.push(acc);
        Ok(KhovanovCube {
            diagram,
            resolutions,
            offsets,
        })
    }

    pub fn diagram(&self) -> &Diagram {
        &self.diagram
    }

    pub fn crossings(&self) -> usize {
        self.diagram.crossings()
    }

    pub fn vertices(&self) -> u32 {
        1 << self.crossings()
    }

    pub fn resolution(&self, v: u32) -> &Resolution {
        &self.resolutions[v as usize]
    }

    pub fn generator_count(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn vertex_offset(&self, v: u32) -> usize {
        self.offsets[v as usize]
    }

    pub fn index(&self, g: KhGenerator) -> usize {
        self.offsets[g.vertex as usize] + g.label as usize
    }

    pub fn generator(&self, i: usize) -> KhGenerator {
        let v = self.offsets.partition_point(|&o| o <= i) - 1;
        KhGenerator {
            vertex: v as u32,
            label: (i - self.offsets[v]) as u32,
        }
    }

    pub fn generators_at(&self, v: u32) -> impl Iterator<Item = KhGenerator> {
        (0..1u32 << self.resolution(v).len()).map(move |label| KhGenerator { vertex: v, label })
    }

    /// `(h, q, k)` of a generator.
    pub fn grading(&self, g: KhGenerator) -> Grading {
        let o = self.diagram.orientation();
        let (np, nm) = (o.n_plus as i32, o.n_minus as i32);
        let res = self.resolution(g.vertex);
        let size = g.vertex.count_ones() as i32;
        let minus = g.label.count_ones() as i32;
        let nt = res.nontrivial_mask();
        let k = (nt & !g.label).count_ones() as i32 - (nt & g.label).count_ones() as i32;
        Grading {
            h: size - nm,
            q: res.len() as i32 - 2 * minus + size + np - 2 * nm,
            k,
        }
    }

    pub fn annular_grading(&self, v: u32, label: u32) -> i32 {
        let nt = self.resolution(v).nontrivial_mask();
        (nt & !label).count_ones() as i32 - (nt & label).count_ones() as i32
    }

    /// Edge leaving `v` along crossing `c`; `v` must be 0 at `c`.
    pub fn edge(&self, v: u32, c: usize) -> EdgeMap {
        debug_assert_eq!(v >> c & 1, 0);
        let u = v | 1 << c;
        let (src, tgt) = (self.resolution(v), self.resolution(u));
        let segs = self.diagram.site_segments(c);
        let mut circle_map: Vec<u8> = src
            .circles()
            .iter()
            .map(|circ| tgt.circle_of_segment(circ.first_segment) as u8)
            .collect();
        let mut sa: Vec<u8> = segs.iter().map(|&s| src.circle_of_segment(s) as u8).collect();
        sa.sort_unstable();
        sa.dedup();
        let surgery = if sa.len() == 2 {
            let a = tgt.circle_of_segment(segs[0]) as u8;
            circle_map[sa[0] as usize] = a;
            circle_map[sa[1] as usize] = a;
            Surgery::Merge {
                a1: sa[0],
                a2: sa[1],
                a,
            }
        } else {
            let site = &self.diagram.layout.sites[c];
            let sm = site.smoothing(true);
            debug_assert_ne!(sm, Smoothing::Crossed);
            let arrow = self.diagram.orientation().arrows[c];
            let (t, h) = crate::diagram::arc_endpoints_for(site, sm, arrow);
            let (a1, a2) = (tgt.circle_of_end(t) as u8, tgt.circle_of_end(h) as u8);
            debug_assert_ne!(a1, a2);
            Surgery::Split { a: sa[0], a1, a2 }
        };
        EdgeMap {
            source: v,
            target: u,
            crossing: c,
            surgery,
            circle_map,
        }
    }
}
