use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use super::lift::{invariant_lifts, InvariantLift, LiftOrder};
use super::pair::PeriodicPair;
use crate::cube::{standard_sign, vertex_string, EdgeAssignment, KhComplex, KhGenerator, Theory};
use crate::error::{Error, Result};
use crate::homology::{GradedChainComplex, Grading, SummandKey};

/// The complex of invariant generators of the cover, indexed like the base
/// cube. Matrix entries are composites of cover edge maps along staircases,
/// restricted to invariant generators and signed by the base sign
/// assignment.
#[derive(Clone, Debug)]
pub struct FixedComplex {
    pub complex: GradedChainComplex,
    pub lifts: Vec<InvariantLift>,
    /// Gradings of the lifts in the cover.
    pub cover_gradings: Vec<Grading>,
}

/// A position where the fixed complex and the base complex disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub source: usize,
    pub target: usize,
    pub fixed: i64,
    pub base: i64,
}

/// Composite of cover edge maps from `ι(v)` along `path` (vertex after each
/// step, crossing) applied to a cover generator label. With `annular`,
/// components leaving the annular grading are dropped after each step.
fn path_image(
    pair: &PeriodicPair,
    v: u32,
    path: &[(u32, usize)],
    label: u32,
    odd: bool,
    annular: bool,
    eps: Option<&EdgeAssignment>,
) -> BTreeMap<u32, i64> {
    let cube = &pair.cover;
    let mut cur: BTreeMap<u32, i64> = BTreeMap::from([(label, 1)]);
    let mut vert = pair.rotation().diagonal(v);
    let mut buf = Vec::new();
    for &(top, cc) in path {
        let edge = cube.edge(vert, cc);
        let sign = if odd { eps.map_or(1, |e| e.get(top, cc) as i64) } else { 1 };
        let mut next = BTreeMap::new();
        for (&x, &coef) in &cur {
            buf.clear();
            if odd {
                edge.odd(x, &mut buf);
            } else {
                edge.even(x, &mut buf);
            }
            let k0 = cube.annular_grading(vert, x);
            for &(y, s) in &buf {
                if annular && cube.annular_grading(top, y) != k0 {
                    continue;
                }
                *next.entry(y).or_insert(0) += coef * s as i64 * sign;
            }
        }
        next.retain(|_, v| *v != 0);
        cur = next;
        vert = top;
    }
    cur
}

/// Builds the fixed complex of the cover in `cover_theory`. Odd theories
/// use the rotation-invariant assignment `eps` on the cover.
pub fn fixed_subcomplex(
    pair: &PeriodicPair,
    cover_theory: Theory,
    eps: Option<&EdgeAssignment>,
    order: LiftOrder,
) -> Result<FixedComplex> {
    let odd = cover_theory.is_odd();
    if odd && eps.is_none() {
        return Err(Error::Invalid("odd theories need an edge assignment".into()));
    }
    let lifts = invariant_lifts(pair, order);
    let base = &pair.base;
    let n = base.crossings();
    let lookup: HashMap<KhGenerator, (usize, i8)> = lifts
        .iter()
        .enumerate()
        .map(|(i, l)| (l.cover, (i, l.sign)))
        .collect();
    let trips: Vec<(u32, u32, i64)> = lifts
        .par_iter()
        .enumerate()
        .flat_map_iter(|(col, l)| {
            let v = l.base.vertex;
            let mut out = Vec::new();
            for c in (0..n).filter(|&c| v >> c & 1 == 0) {
                let u = v | 1 << c;
                let up = pair.rotation().diagonal(u);
                let img = path_image(pair, v, &pair.staircase(v, c), l.cover.label, odd, cover_theory.is_annular(), eps);
                let sign_of = |s: i8| if odd { s as i64 } else { 1 };
                let s = standard_sign(v, c) as i64 * sign_of(l.sign);
                for (y, coef) in img {
                    if let Some(&(row, ys)) = lookup.get(&KhGenerator { vertex: up, label: y }) {
                        out.push((row as u32, col as u32, coef * s * sign_of(ys)));
                    }
                }
            }
            out
        })
        .collect();
    let gradings = lifts.iter().map(|l| base.grading(l.base)).collect();
    let cover_gradings = lifts.iter().map(|l| pair.cover.grading(l.cover)).collect();
    Ok(FixedComplex {
        complex: GradedChainComplex::from_triplets(gradings, trips, 1, SummandKey::QuantumAnnular),
        lifts,
        cover_gradings,
    })
}

impl FixedComplex {
    /// Entrywise comparison with a base complex using the same generator
    /// numbering.
    pub fn compare(&self, base: &KhComplex) -> Vec<Mismatch> {
        let mut a: BTreeMap<(u32, u32), i64> = BTreeMap::new();
        for (r, c, v) in self.complex.triplets() {
            *a.entry((r, c)).or_insert(0) += v;
        }
        for (r, c, v) in base.complex.triplets() {
            *a.entry((r, c)).or_insert(0) -= v;
        }
        a.into_iter()
            .filter(|(_, d)| *d != 0)
            .map(|((r, c), _)| Mismatch {
                source: c as usize,
                target: r as usize,
                fixed: self.complex.entry(r as usize, c as usize),
                base: base.complex.entry(r as usize, c as usize),
            })
            .collect()
    }

    pub fn to_json(&self, n: usize, cover_n: usize) -> serde_json::Value {
        let gens: Vec<_> = self
            .lifts
            .iter()
            .zip(&self.cover_gradings)
            .map(|(l, g)| {
                serde_json::json!({
                    "vertex": vertex_string(l.base.vertex, n),
                    "label": l.base.label,
                    "cover_vertex": vertex_string(l.cover.vertex, cover_n),
                    "cover_label": l.cover.label,
                    "sign": l.sign,
                    "cover_grading": [g.h, g.q, g.k],
                })
            })
            .collect();
        serde_json::json!({ "generators": gens })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::Flavor;
    use crate::diagram::AnnularWord;

    /// Every order of the `p` steps from `ι(v)` to `ι(u)`.
    fn all_paths(pair: &PeriodicPair, v: u32, c: usize) -> Vec<Vec<(u32, usize)>> {
        let n = pair.n();
        let mut orders: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..pair.p {
            orders = orders
                .into_iter()
                .flat_map(|o| {
                    (0..pair.p as usize)
                        .filter(|b| !o.contains(b))
                        .map(|b| [o.clone(), vec![b]].concat())
                        .collect::<Vec<_>>()
                })
                .collect();
        }
        orders
            .into_iter()
            .map(|o| {
                let mut cur = pair.rotation().diagonal(v);
                o.into_iter()
                    .map(|b| {
                        cur |= 1 << (c + b * n);
                        (cur, c + b * n)
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn staircase_composites_are_path_independent() {
        for (text, p) in [("strands 2\nx+ 1\n", 3), ("strands 3\nx+ 1\nx- 2\n", 3), ("strands 1\nu 2\nx+ 1\nn 2\n", 3), ("strands 2\nx+ 1\nx+ 1\n", 2)] {
            let pair = PeriodicPair::new(&AnnularWord::parse(text).unwrap(), p).unwrap();
            let eps = (p % 2 == 1).then(|| pair.equivariant_edge_assignment(Flavor::X).unwrap());
            let n = pair.n();
            let mut compared = 0;
            for l in invariant_lifts(&pair, LiftOrder::Ascending) {
                let v = l.base.vertex;
                for c in (0..n).filter(|&c| v >> c & 1 == 0) {
                    for (odd, annular) in [(false, false), (false, true), (true, false), (true, true)] {
                        if odd && eps.is_none() {
                            continue;
                        }
                        let want = path_image(&pair, v, &pair.staircase(v, c), l.cover.label, odd, annular, eps.as_ref());
                        for path in all_paths(&pair, v, c) {
                            let got = path_image(&pair, v, &path, l.cover.label, odd, annular, eps.as_ref());
                            assert_eq!(got, want, "{text} p={p} v={v} c={c} odd={odd} annular={annular} {path:?}");
                            compared += 1;
                        }
                    }
                }
            }
            assert!(compared > 0);
        }
    }
}
