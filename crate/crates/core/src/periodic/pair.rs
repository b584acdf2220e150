use crate::cube::{obstruction_cocycle, solve_edge_assignment, symmetrize, EdgeAssignment, Flavor, KhovanovCube};
use crate::diagram::{AnnularWord, CircleOrder, CoverRotation, Diagram};
use crate::error::{Error, Result};

/// A word, its p-fold cover and both cubes of resolutions.
#[derive(Clone, Debug)]
pub struct PeriodicPair {
    pub p: u32,
    pub base: KhovanovCube,
    pub cover: KhovanovCube,
}

/// Choices that do not affect homology: circle numbering and arrows.
#[derive(Clone, Debug, Default)]
pub struct PairOptions {
    pub base_order: CircleOrder,
    pub cover_order: CircleOrder,
    /// Arrows of the base crossings; lifted to every copy in the cover.
    pub arrows: Option<Vec<bool>>,
}

impl PeriodicPair {
    pub fn new(word: &AnnularWord, p: u32) -> Result<Self> {
        Self::with_options(word, p, &PairOptions::default())
    }

    pub fn with_options(word: &AnnularWord, p: u32, opts: &PairOptions) -> Result<Self> {
        if p < 2 {
            return Err(Error::BadPeriod(p));
        }
        let mut base = Diagram::new(word.clone())?.with_circle_order(opts.base_order);
        let mut cover = Diagram::cover(word, p)?.with_circle_order(opts.cover_order);
        if let Some(a) = &opts.arrows {
            if a.len() != base.crossings() {
                return Err(Error::Invalid("one arrow per crossing expected".into()));
            }
            let lifted: Vec<bool> = (0..p).flat_map(|_| a.iter().copied()).collect();
            base = base.with_arrows(a.clone());
            cover = cover.with_arrows(lifted);
        } else {
            // local arrow rule is rotation invariant already
            debug_assert!({
                let a = &base.orientation().arrows;
                let lifted: Vec<bool> = (0..p).flat_map(|_| a.iter().copied()).collect();
                lifted == cover.orientation().arrows
            });
        }
        Ok(PeriodicPair {
            p,
            base: KhovanovCube::new(base)?,
            cover: KhovanovCube::new(cover)?,
        })
    }

    pub fn rotation(&self) -> &CoverRotation {
        self.cover.diagram().rotation().expect("cover diagram")
    }

    /// Base crossings.
    pub fn n(&self) -> usize {
        self.base.crossings()
    }

    /// A rotation-invariant solution of the odd sign problem on the cover.
    pub fn equivariant_edge_assignment(&self, flavor: Flavor) -> Result<EdgeAssignment> {
        if self.p.is_multiple_of(2) {
            return Err(Error::EvenPeriod);
        }
        let obs = obstruction_cocycle(&self.cover, flavor)?;
        let eps = solve_edge_assignment(&obs)?;
        let sym = symmetrize(&eps, self.rotation())?;
        debug_assert!(sym.solves(&obs));
        Ok(sym)
    }

    /// The staircase from `ι(v)` up to `ι(u)` for the base edge along `c`:
    /// sectors switch from last to first. Yields (vertex after the step,
    /// cover crossing).
    pub fn staircase(&self, v: u32, c: usize) -> Vec<(u32, usize)> {
        let n = self.n();
        let rot = self.rotation();
        let mut cur = rot.diagonal(v);
        (0..self.p as usize)
            .rev()
            .map(|b| {
                let cc = c + b * n;
                cur |= 1 << cc;
                (cur, cc)
            })
            .collect()
    }

    /// The base edge assignment induced from an assignment on the cover by
    /// multiplying signs along staircases.
    pub fn quotient_edge_assignment(&self, cover_eps: &EdgeAssignment) -> EdgeAssignment {
        let n = self.n();
        let mut eps = EdgeAssignment::constant(n);
        for (u, c) in eps.clone().edges() {
            let v = u ^ 1 << c;
            let s = self
                .staircase(v, c)
                .into_iter()
                .map(|(top, cc)| cover_eps.get(top, cc))
                .product();
            eps.set(u, c, s);
        }
        eps
    }
}
