use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::obstruction::Obstruction;
use crate::diagram::CoverRotation;
use crate::error::{Error, Result};
use crate::homology::BitMatrix;

/// A sign on every edge `u -> u - e_c` of the cube, stored at `(u, c)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeAssignment {
    n: usize,
    signs: Vec<i8>,
}

#[derive(Serialize)]
struct EdgeRow {
    vertex: String,
    crossing: usize,
    sign: i8,
}

impl EdgeAssignment {
    pub fn constant(n: usize) -> Self {
        EdgeAssignment {
            n,
            signs: vec![1; (1usize << n) * n.max(1)],
        }
    }

    pub fn crossings(&self) -> usize {
        self.n
    }

    /// Sign of the edge between `u` (1 at `c`) and `u - e_c`.
    pub fn get(&self, u: u32, c: usize) -> i8 {
        debug_assert_eq!(u >> c & 1, 1);
        self.signs[u as usize * self.n + c]
    }

    pub fn set(&mut self, u: u32, c: usize, s: i8) {
        debug_assert_eq!(u >> c & 1, 1);
        self.signs[u as usize * self.n + c] = s;
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, usize)> + '_ {
        let n = self.n;
        (0..1u32 << n).flat_map(move |u| (0..n).filter(move |&c| u >> c & 1 == 1).map(move |c| (u, c)))
    }

    /// Product of the four edge signs around `(w; c1, c2)`.
    pub fn coboundary(&self, w: u32, c1: usize, c2: usize) -> i8 {
        let u = w | 1 << c1 | 1 << c2;
        self.get(u, c1) * self.get(u ^ 1 << c1, c2) * self.get(u, c2) * self.get(u ^ 1 << c2, c1)
    }

    /// Whether the coboundary equals the obstruction on every face.
    pub fn solves(&self, obs: &Obstruction) -> bool {
        let n = self.n;
        (0..1u32 << n).all(|w| {
            (0..n).all(|c2| {
                (0..c2).all(|c1| {
                    w >> c1 & 1 == 1 || w >> c2 & 1 == 1 || self.coboundary(w, c1, c2) == obs.get(w, c1, c2)
                })
            })
        })
    }

    /// Multiplies by the coboundary of a random vertex sign; every solution
    /// differs from any other by such a twist.
    pub fn twisted(&self, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f: Vec<i8> = (0..1usize << self.n)
            .map(|_| if rng.random::<bool>() { 1 } else { -1 })
            .collect();
        let mut out = self.clone();
        for (u, c) in self.edges().collect::<Vec<_>>() {
            let s = self.get(u, c) * f[u as usize] * f[(u ^ 1 << c) as usize];
            out.set(u, c, s);
        }
        out
    }

    /// Whether the assignment is fixed by the rotation of a cover.
    pub fn is_invariant(&self, rot: &CoverRotation) -> bool {
        self.edges()
            .all(|(u, c)| self.get(rot.vertex(u), rot.crossing(c)) == self.get(u, c))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<EdgeRow> = self
            .edges()
            .map(|(u, c)| EdgeRow {
                vertex: vertex_string(u, self.n),
                crossing: c,
                sign: self.get(u, c),
            })
            .collect();
        serde_json::json!({ "crossings": self.n, "edges": rows })
    }
}

/// Vertex as a 0/1 string in crossing order.
pub fn vertex_string(v: u32, n: usize) -> String {
    (0..n).map(|i| if v >> i & 1 == 1 { '1' } else { '0' }).collect()
}

/// Solves `δε = Ω` by propagating along the lowest set coordinate; the
/// result is verified face by face.
pub fn solve_edge_assignment(obs: &Obstruction) -> Result<EdgeAssignment> {
    obs.check_cocycle()?;
    let n = obs.crossings();
    let mut eps = EdgeAssignment::constant(n);
    for u in 0..1u32 << n {
        for k in 0..n {
            if u >> k & 1 == 0 {
                continue;
            }
            let below = u & ((1 << k) - 1);
            if below == 0 {
                continue;
            }
            let i = below.trailing_zeros() as usize;
            let w = u ^ 1 << i ^ 1 << k;
            let s = obs.get(w, i, k) * eps.get(u ^ 1 << i, k);
            eps.set(u, k, s);
        }
    }
    if !eps.solves(obs) {
        return Err(Error::Invalid("edge assignment propagation failed to solve".into()));
    }
    Ok(eps)
}

/// Same system solved by dense elimination over GF(2) with bit-packed rows;
/// columns follow edge-lexicographic order. Practical up to about eight
/// crossings.
pub fn solve_edge_assignment_dense(obs: &Obstruction) -> Result<EdgeAssignment> {
    let n = obs.crossings();
    let proto = EdgeAssignment::constant(n);
    let edges: Vec<(u32, usize)> = proto.edges().collect();
    let mut col = std::collections::HashMap::new();
    for (i, e) in edges.iter().enumerate() {
        col.insert(*e, i);
    }
    let mut faces = Vec::new();
    for w in 0..1u32 << n {
        for c2 in 0..n {
            for c1 in 0..c2 {
                if w >> c1 & 1 == 0 && w >> c2 & 1 == 0 {
                    faces.push((w, c1, c2));
                }
            }
        }
    }
    let mut m = BitMatrix::zeros(faces.len(), edges.len());
    let mut rhs = Vec::with_capacity(faces.len());
    for (r, &(w, c1, c2)) in faces.iter().enumerate() {
        let u = w | 1 << c1 | 1 << c2;
        for e in [(u, c1), (u ^ 1 << c1, c2), (u, c2), (u ^ 1 << c2, c1)] {
            m.flip(r, col[&e]);
        }
        rhs.push(obs.get(w, c1, c2) == -1);
    }
    let Some(x) = m.solve(&rhs) else {
        obs.check_cocycle()?;
        return Err(Error::Invalid("inconsistent edge assignment system".into()));
    };
    let mut eps = proto;
    for (i, &(u, c)) in edges.iter().enumerate() {
        eps.set(u, c, if x[i] { -1 } else { 1 });
    }
    Ok(eps)
}

/// Averages an assignment over the rotation of a cover: the product of all
/// rotated copies. Needs an odd period.
pub fn symmetrize(eps: &EdgeAssignment, rot: &CoverRotation) -> Result<EdgeAssignment> {
    if rot.p.is_multiple_of(2) {
        return Err(Error::EvenPeriod);
    }
    let mut out = eps.clone();
    for (u, c) in eps.edges().collect::<Vec<_>>() {
        let (mut gu, mut gc, mut s) = (u, c, 1i8);
        for _ in 0..rot.p {
            s *= eps.get(gu, gc);
            gu = rot.vertex(gu);
            gc = rot.crossing(gc);
        }
        out.set(u, c, s);
    }
    Ok(out)
}
