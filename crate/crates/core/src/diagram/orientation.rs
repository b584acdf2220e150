use serde::Serialize;

use super::layout::{trace_all, Layout, Smoothing};
use super::word::{AnnularWord, CrossingSign, Direction};
use crate::error::{Error, Result};

/// Link orientation together with the induced crossing data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossingOrientation {
    /// Sign of each crossing (word order) under the link orientation.
    pub signs: Vec<CrossingSign>,
    /// Arrow of each crossing: `true` when the surgery arc points forward
    /// (see [`crate::diagram::FaceConfiguration`]).
    pub arrows: Vec<bool>,
    pub n_plus: usize,
    pub n_minus: usize,
    /// `+1` or `-1` per segment: direction of travel relative to left-to-right.
    #[serde(skip)]
    pub(crate) segment_direction: Vec<i8>,
    pub components: usize,
}

impl CrossingOrientation {
    pub fn crossings(&self) -> usize {
        self.signs.len()
    }

    /// Replaces the arrows, keeping signs.
    pub fn with_arrows(mut self, arrows: Vec<bool>) -> Self {
        assert_eq!(arrows.len(), self.signs.len());
        self.arrows = arrows;
        self
    }
}

pub(crate) fn component_count(word: &AnnularWord) -> usize {
    let layout = Layout::new(word);
    let partner = layout.partner_with(|_| Smoothing::Crossed);
    trace_all(&layout, &partner).1.len()
}

/// Orients the link and derives crossing signs and arrows. Components are
/// numbered by their lowest segment; the default direction runs left to
/// right through that segment. The arrow of a crossing points forward
/// exactly when its over-strand runs left to right.
pub fn orient_crossings(word: &AnnularWord) -> Result<CrossingOrientation> {
    let layout = Layout::new(word);
    orient_with_layout(word, &layout)
}

pub(crate) fn orient_with_layout(word: &AnnularWord, layout: &Layout) -> Result<CrossingOrientation> {
    let partner = layout.partner_with(|_| Smoothing::Crossed);
    let (_, traces) = trace_all(layout, &partner);
    for &comp in word.orientation_directives().keys() {
        if comp >= traces.len() {
            return Err(Error::Orientation(format!(
                "component {comp} does not exist ({} components)",
                traces.len()
            )));
        }
    }
    let mut dir = vec![0i8; layout.nseg];
    for (ci, t) in traces.iter().enumerate() {
        let flip = word.orientation_directives().get(&ci) == Some(&Direction::Reversed);
        for &(seg, entry) in &t.steps {
            let rightward = (entry % 2 == 0) != flip;
            dir[seg as usize] = if rightward { 1 } else { -1 };
        }
    }
    let mut signs = Vec::with_capacity(layout.crossings());
    let mut arrows = Vec::with_capacity(layout.crossings());
    let (mut n_plus, mut n_minus) = (0, 0);
    for site in &layout.sites {
        // strand A runs (k,i) -> (k+1,i+1), strand B runs (k,i+1) -> (k+1,i)
        let da = dir[(site.ll / 2) as usize];
        let db = dir[(site.ul / 2) as usize];
        let sign = if da * db > 0 {
            site.sign
        } else {
            site.sign.flip()
        };
        match sign {
            CrossingSign::Positive => n_plus += 1,
            CrossingSign::Negative => n_minus += 1,
        }
        signs.push(sign);
        let over = match site.sign {
            CrossingSign::Positive => db,
            CrossingSign::Negative => da,
        };
        arrows.push(over > 0);
    }
    Ok(CrossingOrientation {
        signs,
        arrows,
        n_plus,
        n_minus,
        segment_direction: dir,
        components: traces.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_crossing_braid_is_positive() {
        let w = AnnularWord::parse("strands 2\nx+ 1\n").unwrap();
        let o = orient_crossings(&w).unwrap();
        assert_eq!(o.components, 1);
        assert_eq!((o.n_plus, o.n_minus), (1, 0));
        // a single component: reversing it reverses both strands
        let mut r = w.clone();
        r.set_orientation(0, Direction::Reversed).unwrap();
        let o = orient_crossings(&r).unwrap();
        assert_eq!((o.n_plus, o.n_minus), (1, 0));
    }

    #[test]
    fn reversing_one_component_flips_signs() {
        let w = AnnularWord::parse("strands 2\nx+ 1\nx+ 1\n").unwrap();
        let o = orient_crossings(&w).unwrap();
        assert_eq!(o.components, 2);
        assert_eq!((o.n_plus, o.n_minus), (2, 0));
        let mut r = w.clone();
        r.set_orientation(1, Direction::Reversed).unwrap();
        let o = orient_crossings(&r).unwrap();
        assert_eq!((o.n_plus, o.n_minus), (0, 2));
        assert_eq!(o.signs, vec![CrossingSign::Negative; 2]);
    }

    #[test]
    fn kink_with_cup_and_cap() {
        // strand 1 with a kink drawn from a cup and a cap
        let w = AnnularWord::parse("strands 1\nu 2\nx+ 1\nn 2\n").unwrap();
        let o = orient_crossings(&w).unwrap();
        assert_eq!(o.components, 1);
        assert_eq!(o.n_plus + o.n_minus, 1);
    }
}
