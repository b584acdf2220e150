//! Segment graph of a word.
//!
//! Segment `(k, j)` is strand `j` of slice `k`. Each segment has a left end
//! `2s` and a right end `2s + 1`; events glue right ends of slice `k` to left
//! ends of slice `k + 1` (cyclically), or pair ends within a slice at cups,
//! caps and turnback smoothings.

use super::word::{AnnularWord, CrossingSign, Event};

pub(crate) const NONE: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Smoothing {
    /// Both strands continue horizontally.
    Horizontal,
    /// Left ends paired, right ends paired.
    Turnback,
    /// The crossing itself (used for tracing link components).
    Crossed,
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Site {
    pub sign: CrossingSign,
    /// Right end of segment (k, i).
    pub ll: u32,
    /// Right end of segment (k, i+1).
    pub ul: u32,
    /// Left end of segment (k+1, i).
    pub lr: u32,
    /// Left end of segment (k+1, i+1).
    pub ur: u32,
}

impl Site {
    /// The 0-smoothing of a positive crossing is horizontal.
    pub fn smoothing(&self, bit: bool) -> Smoothing {
        let horizontal = match self.sign {
            CrossingSign::Positive => !bit,
            CrossingSign::Negative => bit,
        };
        if horizontal {
            Smoothing::Horizontal
        } else {
            Smoothing::Turnback
        }
    }

    pub fn glue(&self, partner: &mut [u32], sm: Smoothing) {
        let (a, b, c, d) = match sm {
            Smoothing::Horizontal => (self.ll, self.lr, self.ul, self.ur),
            Smoothing::Turnback => (self.ll, self.ul, self.lr, self.ur),
            Smoothing::Crossed => (self.ll, self.ur, self.ul, self.lr),
        };
        partner[a as usize] = b;
        partner[b as usize] = a;
        partner[c as usize] = d;
        partner[d as usize] = c;
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Layout {
    pub counts: Vec<usize>,
    pub offsets: Vec<usize>,
    pub nseg: usize,
    pub sites: Vec<Site>,
    base: Vec<u32>,
}

impl Layout {
    pub fn new(word: &AnnularWord) -> Self {
        let counts = word.slice_counts();
        let slices = counts.len();
        let mut offsets = Vec::with_capacity(slices);
        let mut acc = 0;
        for &c in &counts {
            offsets.push(acc);
            acc += c;
        }
        let nseg = acc;
        let seg = |k: usize, j: usize| (offsets[k] + j - 1) as u32;
        let left = |k: usize, j: usize| 2 * seg(k, j);
        let right = |k: usize, j: usize| 2 * seg(k, j) + 1;
        let mut base = vec![NONE; 2 * nseg];
        let mut join = |a: u32, b: u32| {
            base[a as usize] = b;
            base[b as usize] = a;
        };
        let mut sites = Vec::new();
        if word.events().is_empty() {
            for j in 1..=counts[0] {
                join(right(0, j), left(0, j));
            }
        }
        for (k, ev) in word.events().iter().enumerate() {
            let nk = (k + 1) % slices;
            let c = counts[k];
            match *ev {
                Event::Crossing { position: i, sign } => {
                    for j in (1..=c).filter(|&j| j != i && j != i + 1) {
                        join(right(k, j), left(nk, j));
                    }
                    sites.push(Site {
                        sign,
                        ll: right(k, i),
                        ul: right(k, i + 1),
                        lr: left(nk, i),
                        ur: left(nk, i + 1),
                    });
                }
                Event::Cup { position: i } => {
                    for j in 1..=c {
                        let t = if j < i { j } else { j + 2 };
                        join(right(k, j), left(nk, t));
                    }
                    join(left(nk, i), left(nk, i + 1));
                }
                Event::Cap { position: i } => {
                    join(right(k, i), right(k, i + 1));
                    for j in (1..=c).filter(|&j| j != i && j != i + 1) {
                        let t = if j < i { j } else { j - 2 };
                        join(right(k, j), left(nk, t));
                    }
                }
            }
        }
        Layout {
            counts,
            offsets,
            nseg,
            sites,
            base,
        }
    }

    pub fn crossings(&self) -> usize {
        self.sites.len()
    }

    pub fn segment(&self, slice: usize, position: usize) -> usize {
        self.offsets[slice] + position - 1
    }

    /// Slice and 1-based position of a segment.
    pub fn locate(&self, seg: usize) -> (usize, usize) {
        let k = match self.offsets.binary_search(&seg) {
            Ok(mut k) => {
                // skip empty slices sharing this offset
                while self.counts[k] == 0 {
                    k += 1;
                }
                k
            }
            Err(k) => k - 1,
        };
        (k, seg - self.offsets[k] + 1)
    }

    pub fn in_seam_slice(&self, seg: usize) -> bool {
        seg < self.counts[0]
    }

    /// Partner map with every crossing smoothed by `f(crossing)`.
    pub fn partner_with(&self, mut f: impl FnMut(usize) -> Smoothing) -> Vec<u32> {
        let mut p = self.base.clone();
        for (c, s) in self.sites.iter().enumerate() {
            s.glue(&mut p, f(c));
        }
        p
    }

    pub fn partner_for_vertex(&self, vertex: u32) -> Vec<u32> {
        self.partner_with(|c| self.sites[c].smoothing(vertex >> c & 1 == 1))
    }
}

/// One closed curve of a traced partner map.
#[derive(Clone, Debug)]
pub(crate) struct Trace {
    /// Segment visited at each step together with the end it was entered by.
    pub steps: Vec<(u32, u32)>,
    pub winding: i32,
}

/// Traces all closed curves; curves are discovered from the lowest unvisited
/// segment, entered by its left end.
pub(crate) fn trace_all(layout: &Layout, partner: &[u32]) -> (Vec<u16>, Vec<Trace>) {
    let mut owner = vec![u16::MAX; layout.nseg];
    let mut traces = Vec::new();
    for start in 0..layout.nseg {
        if owner[start] != u16::MAX {
            continue;
        }
        let id = traces.len() as u16;
        let mut steps = Vec::new();
        let mut winding = 0;
        let mut entry = 2 * start as u32;
        loop {
            let seg = (entry / 2) as usize;
            if owner[seg] != u16::MAX {
                debug_assert_eq!(seg, start);
                break;
            }
            owner[seg] = id;
            steps.push((seg as u32, entry));
            if layout.in_seam_slice(seg) {
                winding += if entry.is_multiple_of(2) { 1 } else { -1 };
            }
            let exit = entry ^ 1;
            entry = partner[exit as usize];
            debug_assert_ne!(entry, NONE);
        }
        traces.push(Trace { steps, winding });
    }
    (owner, traces)
}
