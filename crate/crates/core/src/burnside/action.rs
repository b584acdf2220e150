use rayon::prelude::*;
use serde::Serialize;

use super::functor::{BurnsideCubeFunctor, FaceWitness};
use crate::cube::{vertex_string, KhGenerator};
use crate::diagram::CoverRotation;
use crate::error::{Error, Result};
use crate::periodic::{rotate_generator, PeriodicPair};

/// The rotation of a cover acting on the objects of its Khovanov functor:
/// `ψ(v, x) = (ψv, image, sign)`. Signs are exterior reorderings and are
/// trivial for undecorated functors.
#[derive(Clone, Debug)]
pub struct ExternalAction {
    pub p: u32,
    rot: CoverRotation,
    n: usize,
    objects: Vec<Vec<(u32, i8)>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ActionReport {
    /// `ψ^p` is the identity with trivial decoration on every object.
    pub group_law: bool,
    pub e1: Option<FaceWitness>,
    pub e2: Option<FaceWitness>,
    pub fixed_objects: usize,
    /// Every fixed object is carried to itself with decoration `+1`.
    pub nonsingular: bool,
}

impl ActionReport {
    pub fn passed(&self) -> bool {
        self.group_law && self.e1.is_none() && self.e2.is_none() && self.nonsingular
    }
}

impl ExternalAction {
    pub fn new(f: &BurnsideCubeFunctor, pair: &PeriodicPair) -> Result<Self> {
        let cube = &pair.cover;
        if f.crossings() != cube.crossings() {
            return Err(Error::Invalid("functor is not the functor of the cover".into()));
        }
        let rot = pair.rotation().clone();
        let objects = (0..cube.vertices())
            .into_par_iter()
            .map(|v| {
                cube.generators_at(v)
                    .map(|g| {
                        let (t, s) = rotate_generator(cube, &rot, g);
                        (t.label, if f.is_decorated() { s as i8 } else { 1 })
                    })
                    .collect()
            })
            .collect();
        Ok(ExternalAction {
            p: pair.p,
            rot,
            n: cube.crossings(),
            objects,
        })
    }

    pub fn vertex(&self, v: u32) -> u32 {
        self.rot.vertex(v)
    }

    pub fn crossing(&self, c: usize) -> usize {
        self.rot.crossing(c)
    }

    /// Image of object `x` at `v` and its decoration.
    pub fn object(&self, v: u32, x: u32) -> (u32, i8) {
        self.objects[v as usize][x as usize]
    }

    pub fn is_fixed(&self, v: u32, x: u32) -> bool {
        self.vertex(v) == v && self.object(v, x).0 == x
    }

    /// Replaces the sign of one object, to check that a broken action is
    /// detected.
    pub fn inject_sign(&mut self, g: KhGenerator) {
        let e = &mut self.objects[g.vertex as usize][g.label as usize];
        e.1 = -e.1;
    }

    fn witness(&self, v: u32, cs: &[usize], x: u32, m: &str) -> FaceWitness {
        FaceWitness {
            vertex: vertex_string(v, self.n),
            crossings: cs.to_vec(),
            object: x,
            message: m.into(),
        }
    }

    /// E-1': every edge element `a: x -> y` has exactly one image on the
    /// rotated edge, with `σ(ψa) σ_ψ(x) = σ_ψ(y) σ(a)`.
    pub fn check_e1(&self, f: &BurnsideCubeFunctor) -> Option<FaceWitness> {
        let n = self.n;
        (0..1u32 << n).into_par_iter().find_map_first(|u| {
            for c in (0..n).filter(|&c| u >> c & 1 == 1) {
                let v = u ^ 1 << c;
                let (gu, gc) = (self.vertex(u), self.crossing(c));
                if f.edge(u, c).len() != f.edge(gu, gc).len() {
                    return Some(self.witness(u, &[c], 0, "rotated edge has a different size"));
                }
                for a in &f.edge(u, c).elements {
                    let (gx, sx) = self.object(u, a.source);
                    let (gy, sy) = self.object(v, a.target);
                    let images: Vec<_> = f.elements_from(gu, gc, gx).iter().filter(|e| e.target == gy).collect();
                    if images.len() != 1 {
                        return Some(self.witness(u, &[c], a.source, "element has no unique image"));
                    }
                    let lhs = f.decoration(images[0]) * sx;
                    let rhs = sy * f.decoration(a);
                    if lhs != rhs {
                        return Some(self.witness(u, &[c], a.source, "decorations do not commute with the action"));
                    }
                }
            }
            None
        })
    }

    /// E-2': face matchings commute with the action.
    pub fn check_e2(&self, f: &BurnsideCubeFunctor) -> Option<FaceWitness> {
        let n = self.n;
        (0..1u32 << n).into_par_iter().find_map_first(|u| {
            let ones: Vec<usize> = (0..n).filter(|&c| u >> c & 1 == 1).collect();
            let gu = self.vertex(u);
            for (j, &c2) in ones.iter().enumerate() {
                for &c1 in &ones[..j] {
                    let (m1, m2) = (u ^ 1 << c1, u ^ 1 << c2);
                    let w = m1 ^ 1 << c2;
                    let (g1, g2) = (self.crossing(c1), self.crossing(c2));
                    for x in 0..f.size(u) as u32 {
                        for z in f.face_bottoms(u, c1, c2, x) {
                            let here = match f.face_matching(u, c1, c2, x, z) {
                                Ok(m) => m,
                                Err(e) => return Some(e),
                            };
                            if here.is_empty() {
                                continue;
                            }
                            let there = match f.face_matching(gu, g1, g2, self.object(u, x).0, self.object(w, z).0) {
                                Ok(m) => m,
                                Err(e) => return Some(e),
                            };
                            let mut moved: Vec<(u32, u32)> = here
                                .iter()
                                .map(|&(a, b)| (self.object(m1, a).0, self.object(m2, b).0))
                                .collect();
                            let mut there = there;
                            moved.sort();
                            there.sort();
                            if moved != there {
                                return Some(self.witness(u, &[c1, c2], x, "face matching is not equivariant"));
                            }
                        }
                    }
                }
            }
            None
        })
    }

    pub fn verify(&self, f: &BurnsideCubeFunctor) -> ActionReport {
        let mut group_law = true;
        let mut fixed_objects = 0;
        let mut nonsingular = true;
        for v in 0..1u32 << self.n {
            for x in 0..f.size(v) as u32 {
                let (mut w, mut y, mut s) = (v, x, 1i8);
                for _ in 0..self.p {
                    let (ny, ns) = self.object(w, y);
                    s *= ns;
                    y = ny;
                    w = self.vertex(w);
                }
                if (w, y, s) != (v, x, 1) {
                    group_law = false;
                }
                if self.is_fixed(v, x) {
                    fixed_objects += 1;
                    if self.object(v, x).1 != 1 {
                        nonsingular = false;
                    }
                }
            }
        }
        ActionReport {
            group_law,
            e1: self.check_e1(f),
            e2: self.check_e2(f),
            fixed_objects,
            nonsingular,
        }
    }
}
