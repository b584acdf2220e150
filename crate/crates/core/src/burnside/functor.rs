use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use super::correspondence::{DecoratedCorrespondence, Element};
use crate::cube::{standard_sign, vertex_string, EdgeAssignment, KhovanovCube};
use crate::error::{Error, Result};
use crate::homology::{GradedChainComplex, Grading, SummandKey};

/// The degree map `ι: K -> Z/2` used by totalization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degree {
    /// `ι = 0`: decorations are ignored.
    Zero,
    /// `ι = Id`: decorations become signs.
    Identity,
}

/// A functor from the cube to decorated correspondences. The edge from `u`
/// to `u - e_c` is a correspondence `F(u) -> F(u - e_c)`.
///
/// Every element carries a sign. When `decorated` is false the decoration
/// group is trivial and the signs are only used to pick face matchings.
#[derive(Clone, Debug)]
pub struct BurnsideCubeFunctor {
    n: usize,
    offsets: Vec<usize>,
    gradings: Vec<Grading>,
    edges: Vec<DecoratedCorrespondence>,
    decorated: bool,
    annular: bool,
    swapped: HashSet<(u32, usize, usize)>,
}

/// A pair of composites through the two middle vertices of a face, with the
/// bijection between them written as pairs of middle objects.
pub type Matching = Vec<(u32, u32)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceWitness {
    pub vertex: String,
    pub crossings: Vec<usize>,
    pub object: u32,
    pub message: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CoherenceReport {
    pub faces: usize,
    pub cubes: usize,
    pub failure: Option<FaceWitness>,
}

impl CoherenceReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl BurnsideCubeFunctor {
    /// Assembles a functor from objects and edges. `edges[u * n + c]` must
    /// be present exactly when `u` has a 1 at `c`.
    pub fn new(
        n: usize,
        gradings: Vec<Vec<Grading>>,
        mut edges: Vec<DecoratedCorrespondence>,
        decorated: bool,
        annular: bool,
    ) -> Result<Self> {
        if gradings.len() != 1 << n || edges.len() != (1 << n) * n {
            return Err(Error::Invalid("functor has the wrong number of vertices or edges".into()));
        }
        let mut offsets = Vec::with_capacity(gradings.len() + 1);
        let mut acc = 0;
        for g in &gradings {
            offsets.push(acc);
            acc += g.len();
        }
        offsets.push(acc);
        for u in 0..1u32 << n {
            for c in (0..n).filter(|&c| u >> c & 1 == 1) {
                let e = &mut edges[u as usize * n + c];
                let v = u ^ 1 << c;
                if e.source_size != gradings[u as usize].len() || e.target_size != gradings[v as usize].len() {
                    return Err(Error::Invalid(format!(
                        "edge {} along {c} has the wrong sets",
                        vertex_string(u, n)
                    )));
                }
                e.elements.sort();
            }
        }
        Ok(BurnsideCubeFunctor {
            n,
            offsets,
            gradings: gradings.into_iter().flatten().collect(),
            edges,
            decorated,
            annular,
            swapped: HashSet::new(),
        })
    }

    /// The Khovanov functor of a cube. Signs are the odd edge signs times
    /// `eps`; with `decorated = false` this is the even functor. With
    /// `annular`, elements changing the annular grading are removed.
    pub fn khovanov(cube: &KhovanovCube, eps: &EdgeAssignment, decorated: bool, annular: bool) -> Result<Self> {
        let n = cube.crossings();
        if eps.crossings() != n {
            return Err(Error::Invalid("edge assignment has the wrong size".into()));
        }
        let gradings: Vec<Vec<Grading>> = (0..cube.vertices())
            .map(|v| cube.generators_at(v).map(|g| cube.grading(g)).collect())
            .collect();
        let edges: Vec<DecoratedCorrespondence> = (0..(1usize << n) * n)
            .into_par_iter()
            .map(|i| {
                let (u, c) = ((i / n) as u32, i % n);
                let size_u = 1usize << cube.resolution(u).len();
                if u >> c & 1 == 0 {
                    return DecoratedCorrespondence {
                        source_size: size_u,
                        target_size: 0,
                        elements: Vec::new(),
                    };
                }
                let v = u ^ 1 << c;
                let edge = cube.edge(v, c);
                let s = eps.get(u, c);
                let mut elements = Vec::new();
                let (mut odd, mut even) = (Vec::new(), Vec::new());
                for g in cube.generators_at(v) {
                    odd.clear();
                    even.clear();
                    edge.odd(g.label, &mut odd);
                    edge.even(g.label, &mut even);
                    debug_assert_eq!(
                        {
                            let mut a: Vec<u32> = odd.iter().map(|t| t.0).collect();
                            a.sort();
                            a
                        },
                        {
                            let mut b: Vec<u32> = even.iter().map(|t| t.0).collect();
                            b.sort();
                            b
                        }
                    );
                    let k0 = cube.annular_grading(v, g.label);
                    for &(y, sign) in &odd {
                        if annular && cube.annular_grading(u, y) != k0 {
                            continue;
                        }
                        elements.push(Element {
                            source: y,
                            target: g.label,
                            decoration: sign as i8 * s,
                        });
                    }
                }
                DecoratedCorrespondence {
                    source_size: size_u,
                    target_size: 1 << cube.resolution(v).len(),
                    elements,
                }
            })
            .collect();
        Self::new(n, gradings, edges, decorated, annular)
    }

    pub fn crossings(&self) -> usize {
        self.n
    }

    pub fn is_decorated(&self) -> bool {
        self.decorated
    }

    pub fn is_annular(&self) -> bool {
        self.annular
    }

    pub fn size(&self, v: u32) -> usize {
        self.offsets[v as usize + 1] - self.offsets[v as usize]
    }

    pub fn total_size(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn grading(&self, v: u32, x: u32) -> Grading {
        self.gradings[self.offsets[v as usize] + x as usize]
    }

    /// The correspondence from `u` to `u - e_c`.
    pub fn edge(&self, u: u32, c: usize) -> &DecoratedCorrespondence {
        debug_assert_eq!(u >> c & 1, 1);
        &self.edges[u as usize * self.n + c]
    }

    /// Elements of the edge from `u` along `c` leaving `x`.
    pub fn elements_from(&self, u: u32, c: usize, x: u32) -> &[Element] {
        let e = &self.edge(u, c).elements;
        let lo = e.partition_point(|el| el.source < x);
        let hi = e.partition_point(|el| el.source <= x);
        &e[lo..hi]
    }

    /// The decoration as seen by the decoration group.
    pub fn decoration(&self, e: &Element) -> i8 {
        if self.decorated {
            e.decoration
        } else {
            1
        }
    }

    /// Swaps the matching on one face wherever it has two elements; used to
    /// check that coherence failures are detected.
    pub fn inject_swap(&mut self, u: u32, c1: usize, c2: usize) {
        self.swapped.insert((u, c1.min(c2), c1.max(c2)));
    }

    fn witness(&self, u: u32, cs: &[usize], x: u32, message: String) -> FaceWitness {
        FaceWitness {
            vertex: vertex_string(u, self.n),
            crossings: cs.to_vec(),
            object: x,
            message,
        }
    }

    /// Composites from `x` via `c1` then `c2` ending at `z`, as (middle,
    /// sign); at most three are recorded, which is already one too many.
    fn composites(&self, u: u32, c1: usize, c2: usize, x: u32, z: u32, out: &mut [(u32, i8); 3]) -> usize {
        let mid = u ^ 1 << c1;
        let mut k = 0;
        for a in self.elements_from(u, c1, x) {
            for b in self.elements_from(mid, c2, a.target) {
                if b.target == z {
                    if k == 3 {
                        return 4;
                    }
                    out[k] = (a.target, a.decoration * b.decoration);
                    k += 1;
                }
            }
        }
        k
    }

    /// The sign-preserving bijection between the composites over the face
    /// `u -> u - e_c1 - e_c2` starting at `x` and ending at `z`, as pairs
    /// (middle via `c1`, middle via `c2`).
    pub fn face_matching(&self, u: u32, c1: usize, c2: usize, x: u32, z: u32) -> std::result::Result<Matching, FaceWitness> {
        let mut buf = [[(0u32, 0i8); 3]; 2];
        let nl = self.composites(u, c1, c2, x, z, &mut buf[0]);
        let nr = self.composites(u, c2, c1, x, z, &mut buf[1]);
        let (left, right) = (&buf[0], &buf[1]);
        let fail = |m: &str| Err(self.witness(u, &[c1, c2], x, format!("{m} (to {z})")));
        if nl != nr {
            return fail("composites differ in size");
        }
        let mut pairs: Matching = match nl {
            0 => Vec::new(),
            1 => {
                if left[0].1 != right[0].1 {
                    return fail("composites differ in sign");
                }
                vec![(left[0].0, right[0].0)]
            }
            2 => {
                let pick = |v: &[(u32, i8); 3], s: i8| v[..2].iter().find(|t| t.1 == s).map(|t| t.0);
                match (pick(left, 1), pick(left, -1), pick(right, 1), pick(right, -1)) {
                    (Some(a), Some(b), Some(c), Some(d)) => vec![(a, c), (b, d)],
                    _ => return fail("no unique sign-preserving matching"),
                }
            }
            _ => return fail("more than two composites"),
        };
        if pairs.len() == 2 && !self.swapped.is_empty() && self.swapped.contains(&(u, c1.min(c2), c1.max(c2))) {
            let (a, b) = (pairs[0].1, pairs[1].1);
            pairs[0].1 = b;
            pairs[1].1 = a;
        }
        Ok(pairs)
    }

    /// The middle object via `c2` matched with `y` via `c1`, without
    /// building the whole matching.
    fn partner(&self, u: u32, c1: usize, c2: usize, x: u32, y: u32, z: u32) -> std::result::Result<u32, FaceWitness> {
        let mut buf = [[(0u32, 0i8); 3]; 2];
        let nl = self.composites(u, c1, c2, x, z, &mut buf[0]);
        let nr = self.composites(u, c2, c1, x, z, &mut buf[1]);
        let swapped = !self.swapped.is_empty() && self.swapped.contains(&(u, c1.min(c2), c1.max(c2)));
        if nl == nr && (nl == 1 || (nl == 2 && !swapped)) {
            if let Some(&(_, s)) = buf[0][..nl].iter().find(|t| t.0 == y) {
                let hits = buf[1][..nr].iter().filter(|t| t.1 == s).count();
                let other = buf[0][..nl].iter().filter(|t| t.1 == s).count();
                if hits == 1 && other == 1 {
                    return Ok(buf[1][..nr].iter().find(|t| t.1 == s).unwrap().0);
                }
            }
        }
        // slow path: full matching, with its witness on failure
        let m = self.face_matching(u, c1, c2, x, z)?;
        m.iter()
            .find(|p| p.0 == y)
            .map(|p| p.1)
            .ok_or_else(|| self.witness(u, &[c1, c2], x, "chain is not in its composite".into()))
    }

    /// Every face matching at `u` over `(c1, c2)`, as a check.
    fn check_face(&self, u: u32, c1: usize, c2: usize) -> std::result::Result<(), FaceWitness> {
        for x in 0..self.size(u) as u32 {
            for z in self.face_bottoms(u, c1, c2, x) {
                self.face_matching(u, c1, c2, x, z)?;
            }
        }
        Ok(())
    }

    /// Objects at `u - e_c1 - e_c2` reached from `x` along either path.
    pub fn face_bottoms(&self, u: u32, c1: usize, c2: usize, x: u32) -> Vec<u32> {
        let mut z = Vec::new();
        for (a, b) in [(c1, c2), (c2, c1)] {
            let mid = u ^ 1 << a;
            for e in self.elements_from(u, a, x) {
                z.extend(self.elements_from(mid, b, e.target).iter().map(|f| f.target));
            }
        }
        z.sort_unstable();
        z.dedup();
        z
    }

    /// Replaces the middle of a chain through the face at position `i` by
    /// its partner: `steps[i]` and `steps[i + 1]` are exchanged.
    pub(crate) fn swap_step(&self, top: u32, steps: &mut [usize], gens: &mut [u32], i: usize) -> std::result::Result<(), FaceWitness> {
        let mut u = top;
        for &c in &steps[..i] {
            u ^= 1 << c;
        }
        let (c1, c2) = (steps[i], steps[i + 1]);
        gens[i + 1] = self.partner(u, c1, c2, gens[i], gens[i + 1], gens[i + 2])?;
        steps.swap(i, i + 1);
        Ok(())
    }

    /// Checks every face matching and the hexagon on every 3-face: going
    /// around the six orders of three steps returns every chain to itself.
    pub fn check_coherence(&self) -> CoherenceReport {
        let n = self.n;
        let verts: Vec<u32> = (0..1u32 << n).collect();
        let faces: usize = verts
            .iter()
            .map(|u| {
                let k = u.count_ones() as usize;
                k * k.saturating_sub(1) / 2
            })
            .sum();
        let cubes: usize = verts
            .iter()
            .map(|u| {
                let k = u.count_ones() as usize;
                if k < 3 {
                    0
                } else {
                    k * (k - 1) * (k - 2) / 6
                }
            })
            .sum();
        let failure = verts.par_iter().find_map_first(|&u| {
            let ones: Vec<usize> = (0..n).filter(|&c| u >> c & 1 == 1).collect();
            for (j, &c2) in ones.iter().enumerate() {
                for &c1 in &ones[..j] {
                    if let Err(w) = self.check_face(u, c1, c2) {
                        return Some(w);
                    }
                }
            }
            for (k, &c) in ones.iter().enumerate() {
                for (j, &b) in ones[..k].iter().enumerate() {
                    for &a in &ones[..j] {
                        if let Err(w) = self.check_hexagon(u, [a, b, c]) {
                            return Some(w);
                        }
                    }
                }
            }
            None
        });
        CoherenceReport { faces, cubes, failure }
    }

    fn check_hexagon(&self, u: u32, cs: [usize; 3]) -> std::result::Result<(), FaceWitness> {
        for x in 0..self.size(u) as u32 {
            for a in self.elements_from(u, cs[0], x) {
                let v1 = u ^ 1 << cs[0];
                for b in self.elements_from(v1, cs[1], a.target) {
                    let v2 = v1 ^ 1 << cs[1];
                    for c in self.elements_from(v2, cs[2], b.target) {
                        let start = [x, a.target, b.target, c.target];
                        let mut gens = start;
                        let mut steps = cs;
                        for r in 0..6 {
                            self.swap_step(u, &mut steps, &mut gens, r % 2)?;
                        }
                        if gens != start || steps != cs {
                            return Err(self.witness(u, &cs, x, "hexagon does not commute".into()));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Totalization: the free module on all objects, with the coefficient of
    /// `x ∈ F(u)` in `d y` for `y ∈ F(u - e_c)` the signed count of elements
    /// from `x` to `y`, times the standard sign.
    pub fn totalize(&self, degree: Degree) -> GradedChainComplex {
        let n = self.n;
        let use_signs = degree == Degree::Identity && self.decorated;
        let mut trips = Vec::new();
        for u in 0..1u32 << n {
            for c in (0..n).filter(|&c| u >> c & 1 == 1) {
                let v = u ^ 1 << c;
                let s = standard_sign(v, c) as i64;
                for e in &self.edge(u, c).elements {
                    let d = if use_signs { e.decoration as i64 } else { 1 };
                    trips.push((
                        (self.offsets[u as usize] + e.source as usize) as u32,
                        (self.offsets[v as usize] + e.target as usize) as u32,
                        s * d,
                    ));
                }
            }
        }
        let key = if self.annular {
            SummandKey::QuantumAnnular
        } else {
            SummandKey::Quantum
        };
        GradedChainComplex::from_triplets(self.gradings.clone(), trips, 1, key)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let n = self.n;
        let objects: Vec<_> = (0..1u32 << n)
            .map(|v| {
                let gr: Vec<[i32; 3]> = (0..self.size(v) as u32)
                    .map(|x| {
                        let g = self.grading(v, x);
                        [g.h, g.q, g.k]
                    })
                    .collect();
                serde_json::json!({ "vertex": vertex_string(v, n), "gradings": gr })
            })
            .collect();
        let mut edges = Vec::new();
        for u in 0..1u32 << n {
            for c in (0..n).filter(|&c| u >> c & 1 == 1) {
                let el: Vec<[i64; 3]> = self
                    .edge(u, c)
                    .elements
                    .iter()
                    .map(|e| [e.source as i64, e.target as i64, self.decoration(e) as i64])
                    .collect();
                edges.push(serde_json::json!({
                    "from": vertex_string(u, n),
                    "to": vertex_string(u ^ 1 << c, n),
                    "crossing": c,
                    "elements": el,
                }));
            }
        }
        serde_json::json!({
            "crossings": n,
            "decorated": self.decorated,
            "annular": self.annular,
            "objects": objects,
            "edges": edges,
        })
    }
}

/// Reorders the steps of a chain into `target` by adjacent exchanges,
/// moving the middle objects along face matchings.
pub(crate) fn transport(
    f: &BurnsideCubeFunctor,
    top: u32,
    steps: &mut [usize],
    gens: &mut [u32],
    target: &[usize],
) -> std::result::Result<(), FaceWitness> {
    debug_assert_eq!(steps.len(), target.len());
    let pos = |c: usize| target.iter().position(|&t| t == c).expect("same steps");
    let m = steps.len();
    for pass in 0..m {
        for i in 0..m.saturating_sub(1 + pass) {
            if pos(steps[i]) > pos(steps[i + 1]) {
                f.swap_step(top, steps, gens, i)?;
            }
        }
    }
    Ok(())
}
