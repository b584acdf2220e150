//! Annular link diagrams given as Morse words, their resolutions, crossing
//! orientations, face configurations and cyclic covers.

mod cover;
mod face;
pub(crate) mod layout;
pub(crate) mod orientation;
mod resolution;
mod word;

pub use cover::{build_cover, CoverRotation};
pub use face::{classify_ladybug, face_configuration, FaceArc, FaceConfiguration, FaceType, LadybugType};
pub use orientation::{orient_crossings, CrossingOrientation};
pub use resolution::{Circle, CircleOrder, Resolution};
pub use word::{AnnularWord, CrossingSign, Direction, Event};

use crate::error::{Error, Result};
use layout::Layout;

/// Largest supported number of crossings.
pub const MAX_CROSSINGS: usize = 24;

/// A word with its segment layout, orientation and circle numbering.
#[derive(Clone, Debug)]
pub struct Diagram {
    word: AnnularWord,
    pub(crate) layout: Layout,
    orientation: CrossingOrientation,
    order: CircleOrder,
    rotation: Option<CoverRotation>,
}

impl Diagram {
    pub fn new(word: AnnularWord) -> Result<Self> {
        if word.crossing_count() > MAX_CROSSINGS {
            return Err(Error::TooLarge(word.crossing_count(), MAX_CROSSINGS));
        }
        let layout = Layout::new(&word);
        let orientation = orientation::orient_with_layout(&word, &layout)?;
        Ok(Diagram {
            word,
            layout,
            orientation,
            order: CircleOrder::Canonical,
            rotation: None,
        })
    }

    /// The p-fold cover of `base`, with its rotation recorded.
    pub fn cover(base: &AnnularWord, p: u32) -> Result<Self> {
        let word = build_cover(base, p)?;
        let mut d = Diagram::new(word)?;
        d.rotation = Some(CoverRotation::new(&d.layout, base.events().len(), p));
        Ok(d)
    }

    pub fn with_circle_order(mut self, order: CircleOrder) -> Self {
        self.order = order;
        self
    }

    pub fn with_arrows(mut self, arrows: Vec<bool>) -> Self {
        self.orientation = self.orientation.with_arrows(arrows);
        self
    }

    pub fn word(&self) -> &AnnularWord {
        &self.word
    }

    pub fn orientation(&self) -> &CrossingOrientation {
        &self.orientation
    }

    pub fn circle_order(&self) -> CircleOrder {
        self.order
    }

    pub fn crossings(&self) -> usize {
        self.layout.crossings()
    }

    pub fn rotation(&self) -> Option<&CoverRotation> {
        self.rotation.as_ref()
    }

    pub fn segments(&self) -> usize {
        self.layout.nseg
    }

    pub fn resolve(&self, vertex: u32) -> Resolution {
        Resolution::compute(&self.layout, vertex, self.order)
    }

    /// Segments next to crossing `c`: (k,i), (k,i+1), (k+1,i), (k+1,i+1).
    pub(crate) fn site_segments(&self, c: usize) -> [usize; 4] {
        let s = &self.layout.sites[c];
        [s.ll, s.ul, s.lr, s.ur].map(|e| (e / 2) as usize)
    }
}

/// Ends of the tail and head junctions of the arc at a smoothed crossing.
pub(crate) fn arc_endpoints_for(site: &layout::Site, sm: layout::Smoothing, forward: bool) -> (u32, u32) {
    let (t, h) = resolution::arc_endpoints(site, sm, forward);
    (t.ends.0, h.ends.0)
}

/// Resolves a word at a vertex given as one bit per crossing.
pub fn resolve(word: &AnnularWord, vertex: &[bool]) -> Result<Resolution> {
    let layout = Layout::new(word);
    if vertex.len() != layout.crossings() {
        return Err(Error::VertexLength {
            expected: layout.crossings(),
            found: vertex.len(),
        });
    }
    let v = vertex
        .iter()
        .enumerate()
        .fold(0u32, |acc, (i, &b)| acc | (b as u32) << i);
    Ok(Resolution::compute(&layout, v, CircleOrder::Canonical))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(s: &str) -> AnnularWord {
        AnnularWord::parse(s).unwrap()
    }

    #[test]
    fn one_crossing_resolutions() {
        let w = word("strands 2\nx+ 1\n");
        let r0 = resolve(&w, &[false]).unwrap();
        assert_eq!(r0.len(), 2);
        assert!(r0.circles().iter().all(|c| c.is_nontrivial()));
        let r1 = resolve(&w, &[true]).unwrap();
        assert_eq!(r1.len(), 1);
        assert!(!r1.circles()[0].is_nontrivial());
    }

    #[test]
    fn empty_diagram_has_no_circles() {
        let w = word("strands 0\n");
        let r = resolve(&w, &[]).unwrap();
        assert!(r.is_empty());
    }

    #[test]
    fn concentric_circles() {
        let w = word("strands 3\n");
        let r = resolve(&w, &[]).unwrap();
        assert_eq!(r.len(), 3);
        let seams: Vec<_> = r.circles().iter().map(|c| c.seam_position).collect();
        assert_eq!(seams, vec![Some(1), Some(2), Some(3)]);
        assert!(r.circles().iter().all(|c| c.winding == 1));
    }

    #[test]
    fn trivial_circle_crossing_the_seam() {
        // a cup before the seam and a cap after it
        let w = word("strands 2\nn 1\nu 1\n");
        let r = resolve(&w, &[]).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r.circles()[0].winding, 0);
        assert_eq!(r.circles()[0].seam_position, Some(1));
    }

    #[test]
    fn vertex_length_is_checked() {
        let w = word("strands 2\nx+ 1\n");
        assert!(resolve(&w, &[]).is_err());
    }

    #[test]
    fn braid_closure_winding() {
        // closure of sigma_1 sigma_2 on three strands, 0-resolution at both
        let w = word("strands 3\nx+ 1\nx+ 2\n");
        let r = resolve(&w, &[false, false]).unwrap();
        assert_eq!(r.len(), 3);
        let r = resolve(&w, &[true, true]).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r.circles()[0].winding, 1);
    }

    #[test]
    fn shuffled_order_is_a_permutation() {
        let w = word("strands 4\nx+ 1\nx+ 3\n");
        let d = Diagram::new(w).unwrap();
        let canon = d.resolve(0);
        let shuffled = d.clone().with_circle_order(CircleOrder::Shuffled(7)).resolve(0);
        let mut a: Vec<_> = canon.circles().to_vec();
        let mut b: Vec<_> = shuffled.circles().to_vec();
        a.sort_by_key(|c| c.first_segment);
        b.sort_by_key(|c| c.first_segment);
        assert_eq!(a, b);
        for seg in 0..d.segments() {
            let ca = canon.circles()[canon.circle_of_segment(seg)];
            let cb = shuffled.circles()[shuffled.circle_of_segment(seg)];
            assert_eq!(ca, cb);
        }
    }
}
