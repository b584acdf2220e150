use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use super::action::ExternalAction;
use super::correspondence::{DecoratedCorrespondence, Element};
use super::functor::{transport, BurnsideCubeFunctor};
use crate::cube::vertex_string;
use crate::error::{Error, Result};
use crate::homology::Grading;
use crate::periodic::{InvariantLift, PeriodicPair};

/// Subgroups of `Z/p` for prime `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subgroup {
    Trivial,
    Whole,
}

/// Chains of the cover functor between fixed objects, keyed by base edge
/// `(u, c)` and the objects at both ends.
type ChainTable = HashMap<(u32, usize, u32, u32), Vec<(Vec<u32>, i8)>>;

/// The fixed-point functor on the fixed subcube, identified with the cube
/// of the base word. Objects are fixed objects of the cover functor at the
/// invariant vertices, listed by increasing cover label.
#[derive(Clone, Debug)]
pub struct FixedPointFunctor {
    pub functor: BurnsideCubeFunctor,
    /// Cover labels of the objects at each vertex.
    pub objects: Vec<Vec<u32>>,
    subgroup: Subgroup,
    p: u32,
    chains: ChainTable,
}

fn steps_for(n: usize, p: u32, c: usize) -> Vec<usize> {
    (0..p as usize).map(|b| c + b * n).collect()
}

/// Chains from `x` at `top` following `steps`; each is the list of objects.
fn chains_from(f: &BurnsideCubeFunctor, top: u32, steps: &[usize], x: u32) -> Vec<(Vec<u32>, i8)> {
    let mut out = Vec::new();
    let mut stack = vec![(top, vec![x], 1i8)];
    while let Some((v, gens, s)) = stack.pop() {
        let i = gens.len() - 1;
        if i == steps.len() {
            out.push((gens, s));
            continue;
        }
        for e in f.elements_from(v, steps[i], gens[i]) {
            let mut g = gens.clone();
            g.push(e.target);
            stack.push((v ^ 1 << steps[i], g, s * e.decoration));
        }
    }
    out.sort();
    out
}

/// Whether the rotation carries a chain to itself after moving it back to
/// its own path along face matchings.
fn chain_is_fixed(f: &BurnsideCubeFunctor, act: &ExternalAction, top: u32, steps: &[usize], gens: &[u32]) -> Result<bool> {
    let mut v = top;
    let mut moved = Vec::with_capacity(gens.len());
    for (i, &g) in gens.iter().enumerate() {
        moved.push(act.object(v, g).0);
        if i < steps.len() {
            v ^= 1 << steps[i];
        }
    }
    let mut msteps: Vec<usize> = steps.iter().map(|&c| act.crossing(c)).collect();
    transport(f, act.vertex(top), &mut msteps, &mut moved, steps).map_err(|w| Error::Matching(w.message))?;
    Ok(moved == gens)
}

/// The `H`-fixed-point functor of a cover functor. For the whole group the
/// edge from `u` to `u - e_c` is the set of fixed chains along the
/// staircase `c, c + n, ..., c + (p - 1) n` of the cover cube.
pub fn fixed_point_functor(
    f: &BurnsideCubeFunctor,
    act: &ExternalAction,
    pair: &PeriodicPair,
    subgroup: Subgroup,
) -> Result<FixedPointFunctor> {
    if subgroup == Subgroup::Trivial {
        return Ok(FixedPointFunctor {
            functor: f.clone(),
            objects: (0..1u32 << f.crossings()).map(|v| (0..f.size(v) as u32).collect()).collect(),
            subgroup,
            p: pair.p,
            chains: HashMap::new(),
        });
    }
    let n = pair.n();
    let p = pair.p;
    let rot = pair.rotation();
    let objects: Vec<Vec<u32>> = (0..1u32 << n)
        .map(|u| {
            let up = rot.diagonal(u);
            (0..f.size(up) as u32).filter(|&x| act.is_fixed(up, x)).collect()
        })
        .collect();
    let local: Vec<HashMap<u32, u32>> = objects
        .iter()
        .map(|o| o.iter().enumerate().map(|(i, &x)| (x, i as u32)).collect())
        .collect();
    let pi = p as i32;
    let gradings: Vec<Vec<Grading>> = (0..1u32 << n)
        .map(|u| {
            let up = rot.diagonal(u);
            objects[u as usize]
                .iter()
                .map(|&x| {
                    let g = f.grading(up, x);
                    Grading {
                        h: g.h.div_euclid(pi),
                        q: (g.q + (pi - 1) * g.k).div_euclid(pi),
                        k: g.k,
                    }
                })
                .collect()
        })
        .collect();
    let jobs: Vec<(u32, usize)> = (0..1u32 << n)
        .flat_map(|u| (0..n).filter(move |&c| u >> c & 1 == 1).map(move |c| (u, c)))
        .collect();
    let found: Vec<Result<Vec<((u32, usize, u32, u32), Vec<u32>, i8)>>> = jobs
        .par_iter()
        .map(|&(u, c)| {
            let top = rot.diagonal(u);
            let v = u ^ 1 << c;
            let steps = steps_for(n, p, c);
            let mut out = Vec::new();
            for &x in &objects[u as usize] {
                for (gens, s) in chains_from(f, top, &steps, x) {
                    let y = *gens.last().unwrap();
                    if !local[v as usize].contains_key(&y) {
                        continue;
                    }
                    if chain_is_fixed(f, act, top, &steps, &gens)? {
                        out.push(((u, c, x, y), gens, s));
                    }
                }
            }
            Ok(out)
        })
        .collect();
    let mut chains: ChainTable = HashMap::new();
    let mut edges: Vec<DecoratedCorrespondence> = (0..(1usize << n) * n)
        .map(|i| DecoratedCorrespondence {
            source_size: objects[i / n.max(1)].len(),
            target_size: 0,
            elements: Vec::new(),
        })
        .collect();
    for &(u, c) in &jobs {
        let v = u ^ 1 << c;
        edges[u as usize * n + c].target_size = objects[v as usize].len();
    }
    for r in found {
        for ((u, c, x, y), gens, s) in r? {
            let v = u ^ 1 << c;
            edges[u as usize * n + c].elements.push(Element {
                source: local[u as usize][&x],
                target: local[v as usize][&y],
                decoration: s,
            });
            chains.entry((u, c, x, y)).or_default().push((gens, s));
        }
    }
    let functor = BurnsideCubeFunctor::new(n, gradings, edges, f.is_decorated(), f.is_annular())?;
    Ok(FixedPointFunctor {
        functor,
        objects,
        subgroup,
        p,
        chains,
    })
}

impl FixedPointFunctor {
    pub fn subgroup(&self) -> Subgroup {
        self.subgroup
    }

    /// Compares with the annular functor of the base word through the lift
    /// correspondence: objects, elements with decorations corrected by the
    /// lift signs, and face matchings obtained by moving chains across faces
    /// of the cover. Returns the first difference.
    pub fn compare_with_quotient(
        &self,
        cover: &BurnsideCubeFunctor,
        quotient: &BurnsideCubeFunctor,
        pair: &PeriodicPair,
        lifts: &[InvariantLift],
    ) -> Option<String> {
        let n = quotient.crossings();
        if self.subgroup != Subgroup::Whole || self.functor.crossings() != n {
            return Some("fixed functor does not live on the base cube".into());
        }
        let rot = pair.rotation();
        // cover label -> (base label, sign) at each base vertex
        let mut down: Vec<HashMap<u32, (u32, i8)>> = vec![HashMap::new(); 1 << n];
        for l in lifts {
            down[l.base.vertex as usize].insert(l.cover.label, (l.base.label, l.sign));
        }
        let sign_of = |s: i8| if quotient.is_decorated() { s } else { 1 };
        for u in 0..1u32 << n {
            let mut a: Vec<u32> = self.objects[u as usize].clone();
            let mut b: Vec<u32> = down[u as usize].keys().copied().collect();
            a.sort();
            b.sort();
            if a != b || quotient.size(u) != a.len() {
                return Some(format!("fixed objects differ at {}", vertex_string(u, n)));
            }
        }
        for u in 0..1u32 << n {
            for c in (0..n).filter(|&c| u >> c & 1 == 1) {
                let v = u ^ 1 << c;
                let mut mine: Vec<Element> = self
                    .functor
                    .edge(u, c)
                    .elements
                    .iter()
                    .map(|e| {
                        let x = self.objects[u as usize][e.source as usize];
                        let y = self.objects[v as usize][e.target as usize];
                        let (bx, sx) = down[u as usize][&x];
                        let (by, sy) = down[v as usize][&y];
                        Element {
                            source: bx,
                            target: by,
                            decoration: sign_of(e.decoration * sx * sy),
                        }
                    })
                    .collect();
                let mut theirs: Vec<Element> = quotient
                    .edge(u, c)
                    .elements
                    .iter()
                    .map(|e| Element {
                        decoration: quotient.decoration(e),
                        ..*e
                    })
                    .collect();
                mine.sort();
                theirs.sort();
                if mine != theirs {
                    return Some(format!("edge {} along {c} differs", vertex_string(u, n)));
                }
            }
        }
        // face matchings
        let up_of: Vec<HashMap<u32, u32>> = down
            .iter()
            .map(|m| m.iter().map(|(&cl, &(bl, _))| (bl, cl)).collect())
            .collect();
        for u in 0..1u32 << n {
            let ones: Vec<usize> = (0..n).filter(|&c| u >> c & 1 == 1).collect();
            for (j, &c2) in ones.iter().enumerate() {
                for &c1 in &ones[..j] {
                    let (m1, m2) = (u ^ 1 << c1, u ^ 1 << c2);
                    let w = m1 ^ 1 << c2;
                    for x in 0..quotient.size(u) as u32 {
                        for z in quotient.face_bottoms(u, c1, c2, x) {
                            let want = match quotient.face_matching(u, c1, c2, x, z) {
                                Ok(m) => m,
                                Err(e) => return Some(e.message),
                            };
                            let xu = up_of[u as usize][&x];
                            let zu = up_of[w as usize][&z];
                            let mut got = Vec::new();
                            for (&(eu, ec, ex, ey), list) in &self.chains {
                                if (eu, ec, ex) != (u, c1, xu) {
                                    continue;
                                }
                                for (g1, _) in list {
                                    let Some(list2) = self.chains.get(&(m1, c2, ey, zu)) else {
                                        continue;
                                    };
                                    for (g2, _) in list2 {
                                        let mut gens: Vec<u32> = g1.clone();
                                        gens.extend_from_slice(&g2[1..]);
                                        let mut steps = steps_for(n, self.p, c1);
                                        steps.extend(steps_for(n, self.p, c2));
                                        let mut target = steps_for(n, self.p, c2);
                                        target.extend(steps_for(n, self.p, c1));
                                        if let Err(e) = transport(cover, rot.diagonal(u), &mut steps, &mut gens, &target) {
                                            return Some(e.message);
                                        }
                                        let mid = gens[self.p as usize];
                                        let Some(&(b2, _)) = down[m2 as usize].get(&mid) else {
                                            return Some(format!(
                                                "face {} ({c1}, {c2}) moves a fixed chain off the fixed objects",
                                                vertex_string(u, n)
                                            ));
                                        };
                                        got.push((down[m1 as usize][&ey].0, b2));
                                    }
                                }
                            }
                            let mut want = want;
                            got.sort();
                            want.sort();
                            if got != want {
                                return Some(format!(
                                    "face matching at {} ({c1}, {c2}) differs",
                                    vertex_string(u, n)
                                ));
                            }
                        }
                    }
                }
            }
        }
        None
    }

    /// Number of fixed objects by base vertex.
    pub fn object_counts(&self) -> BTreeMap<String, usize> {
        let n = self.functor.crossings();
        self.objects
            .iter()
            .enumerate()
            .map(|(v, o)| (vertex_string(v as u32, n), o.len()))
            .collect()
    }
}
