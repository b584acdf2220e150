use rayon::prelude::*;

use super::pair::PeriodicPair;
use crate::cube::{sort_descending, KhGenerator, KhovanovCube};
use crate::diagram::CoverRotation;
use crate::error::{Error, Result};
use crate::homology::GradedChainComplex;

/// The rotation acting on generators of the cover complex: generator `i`
/// goes to `sign[i] * image[i]`.
#[derive(Clone, Debug)]
pub struct ChainAction {
    pub p: u32,
    pub image: Vec<u32>,
    pub sign: Vec<i8>,
}

/// Koszul sign of the block rotation: ones in the first `p - 1` sectors
/// times ones in the last sector.
pub fn rotation_sign(v: u32, n: usize, p: u32) -> i8 {
    let total = n * p as usize;
    let head_mask = if n == 0 { 0 } else { (1u32 << (total - n)) - 1 };
    let head = (v & head_mask).count_ones();
    let tail = (v >> (total - n)).count_ones();
    if (head * tail).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Image of a generator under the rotation, with the sign coming from
/// reordering the wedge (only used by odd theories).
pub(crate) fn rotate_generator(cube: &KhovanovCube, rot: &CoverRotation, g: KhGenerator) -> (KhGenerator, i32) {
    let res = cube.resolution(g.vertex);
    let tv = rot.vertex(g.vertex);
    let tres = cube.resolution(tv);
    let mut seq = Vec::with_capacity(g.label.count_ones() as usize);
    for i in (0..res.len()).rev() {
        if g.label >> i & 1 == 1 {
            let s = rot.segment(res.circles()[i].first_segment);
            seq.push(tres.circle_of_segment(s) as u8);
        }
    }
    let (label, sign) = sort_descending(&seq).expect("rotation is a bijection on circles");
    (KhGenerator { vertex: tv, label }, sign)
}

impl ChainAction {
    pub fn new(pair: &PeriodicPair, odd: bool) -> Self {
        let cube = &pair.cover;
        let rot = pair.rotation();
        let n = pair.n();
        let (image, sign): (Vec<u32>, Vec<i8>) = (0..cube.generator_count())
            .into_par_iter()
            .map(|i| {
                let g = cube.generator(i);
                let (t, s) = rotate_generator(cube, rot, g);
                let mut sign = rotation_sign(g.vertex, n, pair.p);
                if odd {
                    sign *= s as i8;
                }
                (cube.index(t) as u32, sign)
            })
            .unzip();
        ChainAction { p: pair.p, image, sign }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    /// Applies the action to a chain given as dense coefficients.
    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        let mut out = vec![0; x.len()];
        for (i, &c) in x.iter().enumerate() {
            if c != 0 {
                out[self.image[i] as usize] += self.sign[i] as i64 * c;
            }
        }
        out
    }

    /// Checks `ψ d = d ψ` on every generator and that `ψ^p` is the identity.
    pub fn verify(&self, complex: &GradedChainComplex) -> Result<()> {
        if complex.len() != self.len() {
            return Err(Error::Invalid("action and complex differ in size".into()));
        }
        let bad = (0..self.len()).into_par_iter().find_first(|&i| {
            let mut lhs = std::collections::BTreeMap::new();
            for (r, v) in complex.column(i) {
                *lhs.entry(self.image[r] as usize).or_insert(0i64) += self.sign[r] as i64 * v;
            }
            let mut rhs = std::collections::BTreeMap::new();
            for (r, v) in complex.column(self.image[i] as usize) {
                *rhs.entry(r).or_insert(0i64) += self.sign[i] as i64 * v;
            }
            lhs.retain(|_, v| *v != 0);
            rhs.retain(|_, v| *v != 0);
            lhs != rhs
        });
        if let Some(i) = bad {
            return Err(Error::Invalid(format!("rotation does not commute with d at generator {i}")));
        }
        for i in 0..self.len() {
            let (mut j, mut s) = (i, 1i8);
            for _ in 0..self.p {
                s *= self.sign[j];
                j = self.image[j] as usize;
            }
            if j != i || s != 1 {
                return Err(Error::Invalid(format!("rotation has order other than p at generator {i}")));
            }
        }
        Ok(())
    }
}
