use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::edge_assignment::{solve_edge_assignment, vertex_string, EdgeAssignment};
use super::khcube::{KhGenerator, KhovanovCube};
use super::obstruction::{obstruction_cocycle, Flavor};
use crate::diagram::{AnnularWord, Diagram};
use crate::error::{Error, Result};
use crate::homology::{homology, GradedChainComplex, GradedRanks, Grading, Ring, SummandKey};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Theory {
    Even,
    Odd,
    AnnularEven,
    AnnularOdd,
}

impl Theory {
    pub const ALL: [Theory; 4] = [Theory::Even, Theory::Odd, Theory::AnnularEven, Theory::AnnularOdd];

    pub fn is_odd(self) -> bool {
        matches!(self, Theory::Odd | Theory::AnnularOdd)
    }

    pub fn is_annular(self) -> bool {
        matches!(self, Theory::AnnularEven | Theory::AnnularOdd)
    }

    pub fn annular(self) -> Theory {
        if self.is_odd() {
            Theory::AnnularOdd
        } else {
            Theory::AnnularEven
        }
    }

    pub fn plain(self) -> Theory {
        if self.is_odd() {
            Theory::Odd
        } else {
            Theory::Even
        }
    }
}

impl FromStr for Theory {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "even" => Ok(Theory::Even),
            "odd" => Ok(Theory::Odd),
            "annular-even" => Ok(Theory::AnnularEven),
            "annular-odd" => Ok(Theory::AnnularOdd),
            _ => Err(Error::Invalid(format!(
                "unknown theory `{s}` (use even, odd, annular-even, annular-odd)"
            ))),
        }
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theory::Even => "even",
            Theory::Odd => "odd",
            Theory::AnnularEven => "annular-even",
            Theory::AnnularOdd => "annular-odd",
        })
    }
}

/// Sign `(-1)^{s}` of the standard sign assignment on the edge along `c`
/// at `v`: the parity of coordinates of `v` before `c`.
pub fn standard_sign(v: u32, c: usize) -> i32 {
    if (v & ((1u32 << c) - 1)).count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// A Khovanov-type complex together with its generator numbering.
#[derive(Clone, Debug)]
pub struct KhComplex {
    pub theory: Theory,
    pub complex: GradedChainComplex,
    n: usize,
    offsets: Vec<usize>,
}

impl KhComplex {
    pub fn crossings(&self) -> usize {
        self.n
    }

    pub fn index(&self, g: KhGenerator) -> usize {
        self.offsets[g.vertex as usize] + g.label as usize
    }

    pub fn generator(&self, i: usize) -> KhGenerator {
        let v = self.offsets.partition_point(|&o| o <= i) - 1;
        KhGenerator {
            vertex: v as u32,
            label: (i - self.offsets[v]) as u32,
        }
    }

    pub fn homology(&self, ring: Ring) -> Result<GradedRanks> {
        homology(&self.complex, ring)
    }

    /// JSON export: generators with gradings and the differential as
    /// `(row, col, value)` triplets (row is the target).
    pub fn to_json(&self) -> serde_json::Value {
        let gens: Vec<serde_json::Value> = (0..self.complex.len())
            .map(|i| {
                let g = self.generator(i);
                let gr = self.complex.grading(i);
                serde_json::json!({
                    "index": i,
                    "vertex": vertex_string(g.vertex, self.n),
                    "label": g.label,
                    "h": gr.h,
                    "q": gr.q,
                    "k": gr.k,
                })
            })
            .collect();
        let diff: Vec<[i64; 3]> = self
            .complex
            .triplets()
            .into_iter()
            .map(|(r, c, v)| [r as i64, c as i64, v])
            .collect();
        serde_json::json!({
            "theory": self.theory.to_string(),
            "crossings": self.n,
            "generators": gens,
            "differential": diff,
        })
    }
}

/// Assembles the complex of a theory. Odd theories need an edge assignment.
pub fn build_complex(cube: &KhovanovCube, theory: Theory, eps: Option<&EdgeAssignment>) -> Result<KhComplex> {
    let n = cube.crossings();
    if theory.is_odd() && eps.is_none() {
        return Err(Error::Invalid("odd theories need an edge assignment".into()));
    }
    if let Some(e) = eps {
        if e.crossings() != n {
            return Err(Error::Invalid("edge assignment has the wrong size".into()));
        }
    }
    let annular = theory.is_annular();
    let gradings: Vec<Grading> = (0..cube.vertices())
        .into_par_iter()
        .flat_map_iter(|v| cube.generators_at(v).map(|g| cube.grading(g)))
        .collect();
    let trips: Vec<(u32, u32, i64)> = (0..cube.vertices())
        .into_par_iter()
        .flat_map_iter(|v| {
            let mut out = Vec::new();
            let mut buf = Vec::new();
            for c in (0..n).filter(|&c| v >> c & 1 == 0) {
                let edge = cube.edge(v, c);
                let u = edge.target;
                let mut sign = standard_sign(v, c);
                if theory.is_odd() {
                    sign *= eps.unwrap().get(u, c) as i32;
                }
                for g in cube.generators_at(v) {
                    buf.clear();
                    if theory.is_odd() {
                        edge.odd(g.label, &mut buf);
                    } else {
                        edge.even(g.label, &mut buf);
                    }
                    let k0 = if annular { cube.annular_grading(v, g.label) } else { 0 };
                    for &(y, s) in &buf {
                        if annular && cube.annular_grading(u, y) != k0 {
                            continue;
                        }
                        let row = cube.index(KhGenerator { vertex: u, label: y });
                        out.push((row as u32, cube.index(g) as u32, (sign * s) as i64));
                    }
                }
            }
            out
        })
        .collect();
    let key = if annular {
        SummandKey::QuantumAnnular
    } else {
        SummandKey::Quantum
    };
    let offsets = (0..=cube.vertices())
        .map(|v| {
            if v == cube.vertices() {
                cube.generator_count()
            } else {
                cube.vertex_offset(v)
            }
        })
        .collect();
    Ok(KhComplex {
        theory,
        complex: GradedChainComplex::from_triplets(gradings, trips, 1, key),
        n,
        offsets,
    })
}

/// Builds the complex of a word directly, choosing the edge assignment of
/// the requested flavor for odd theories.
pub fn complex_of_word(word: &AnnularWord, theory: Theory, flavor: Flavor) -> Result<KhComplex> {
    let cube = KhovanovCube::new(Diagram::new(word.clone())?)?;
    complex_of_cube(&cube, theory, flavor)
}

pub fn complex_of_cube(cube: &KhovanovCube, theory: Theory, flavor: Flavor) -> Result<KhComplex> {
    if theory.is_odd() {
        let obs = obstruction_cocycle(cube, flavor)?;
        let eps = solve_edge_assignment(&obs)?;
        build_complex(cube, theory, Some(&eps))
    } else {
        build_complex(cube, theory, None)
    }
}

/// Graded homology of a word in one of the four theories.
pub fn homology_of_word(word: &AnnularWord, theory: Theory, ring: Ring) -> Result<GradedRanks> {
    complex_of_word(word, theory, Flavor::X)?.homology(ring)
}
