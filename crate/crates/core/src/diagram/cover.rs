use super::layout::{trace_all, Layout, Smoothing};
use super::orientation::orient_with_layout;
use super::word::{AnnularWord, Direction};
use crate::error::{Error, Result};

/// The p-fold cyclic cover: the word repeated `p` times, crossings listed
/// copy by copy. The orientation is lifted from the base word.
pub fn build_cover(word: &AnnularWord, p: u32) -> Result<AnnularWord> {
    if p < 1 {
        return Err(Error::BadPeriod(p));
    }
    let mut events = Vec::with_capacity(word.events().len() * p as usize);
    for _ in 0..p {
        events.extend_from_slice(word.events());
    }
    let mut cover = AnnularWord::new(word.strands(), events)?;
    let base_layout = Layout::new(word);
    let base = orient_with_layout(word, &base_layout)?;
    let layout = Layout::new(&cover);
    let partner = layout.partner_with(|_| Smoothing::Crossed);
    let (_, traces) = trace_all(&layout, &partner);
    let slices = base_layout.counts.len();
    for (ci, t) in traces.iter().enumerate() {
        let (seg, entry) = t.steps[0];
        let (k, j) = layout.locate(seg as usize);
        let base_seg = base_layout.segment(k % slices, j);
        let lifted = base.segment_direction[base_seg];
        let default = if entry % 2 == 0 { 1 } else { -1 };
        if lifted != default {
            cover.set_orientation(ci, Direction::Reversed)?;
        }
    }
    Ok(cover)
}

/// Rotation of a p-fold cover by one sector.
#[derive(Clone, Debug)]
pub struct CoverRotation {
    pub p: u32,
    /// Crossings of the base word.
    pub n: usize,
    segment_image: Vec<u32>,
}

impl CoverRotation {
    pub(crate) fn new(cover_layout: &Layout, base_events: usize, p: u32) -> Self {
        let slices = cover_layout.counts.len();
        let shift = if base_events == 0 { 0 } else { base_events };
        let segment_image = (0..cover_layout.nseg)
            .map(|s| {
                let (k, j) = cover_layout.locate(s);
                cover_layout.segment((k + shift) % slices, j) as u32
            })
            .collect();
        CoverRotation {
            p,
            n: cover_layout.crossings() / p as usize,
            segment_image,
        }
    }

    pub fn segment(&self, seg: usize) -> usize {
        self.segment_image[seg] as usize
    }

    /// Image of a vertex: sector `i` moves to sector `i + 1`.
    pub fn vertex(&self, v: u32) -> u32 {
        let n = self.n as u32;
        let total = n * self.p;
        if n == 0 || self.p == 1 {
            return v;
        }
        let mask = if total == 32 { u32::MAX } else { (1u32 << total) - 1 };
        ((v << n) | (v >> (total - n))) & mask
    }

    /// Image of a crossing index.
    pub fn crossing(&self, c: usize) -> usize {
        (c + self.n) % (self.n * self.p as usize).max(1)
    }

    /// Invariant vertex `(u, u, ..., u)`.
    pub fn diagonal(&self, u: u32) -> u32 {
        let mut v = 0;
        for i in 0..self.p {
            v |= u << (i * self.n as u32);
        }
        v
    }

    pub fn is_invariant(&self, v: u32) -> bool {
        self.vertex(v) == v
    }
}
