use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::khcube::KhovanovCube;
use crate::diagram::{classify_ladybug, FaceType, LadybugType};
use crate::error::{Error, Result};

/// Which ladybug type carries the sign -1 in the obstruction.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Flavor {
    #[default]
    X,
    Y,
}

impl std::str::FromStr for Flavor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "X" | "x" => Ok(Flavor::X),
            "Y" | "y" => Ok(Flavor::Y),
            _ => Err(Error::Invalid(format!("unknown flavor `{s}` (use X or Y)"))),
        }
    }
}

pub(crate) fn pair_index(c1: usize, c2: usize) -> usize {
    debug_assert!(c1 < c2);
    c2 * (c2 - 1) / 2 + c1
}

/// Face types over every 2-face `(w; c1 < c2)` of the cube.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceTypes {
    n: usize,
    types: Vec<FaceType>,
}

impl FaceTypes {
    pub fn crossings(&self) -> usize {
        self.n
    }

    pub fn get(&self, w: u32, c1: usize, c2: usize) -> FaceType {
        let (a, b) = (c1.min(c2), c1.max(c2));
        let pairs = self.n * (self.n - 1) / 2;
        self.types[w as usize * pairs + pair_index(a, b)]
    }

    pub fn counts(&self) -> BTreeMap<String, usize> {
        let mut out = BTreeMap::new();
        for t in &self.types {
            *out.entry(format!("{t:?}")).or_insert(0) += 1;
        }
        out
    }
}

/// The obstruction 2-cochain: `-1` on type A faces and on ladybugs of the
/// chosen flavor, `+1` elsewhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstruction {
    pub flavor: Flavor,
    faces: FaceTypes,
}

impl Obstruction {
    pub fn new(faces: FaceTypes, flavor: Flavor) -> Self {
        Obstruction { flavor, faces }
    }

    pub fn crossings(&self) -> usize {
        self.faces.n
    }

    pub fn face_types(&self) -> &FaceTypes {
        &self.faces
    }

    pub fn get(&self, w: u32, c1: usize, c2: usize) -> i8 {
        match (self.faces.get(w, c1, c2), self.flavor) {
            (FaceType::A, _) | (FaceType::X, Flavor::X) | (FaceType::Y, Flavor::Y) => -1,
            _ => 1,
        }
    }

    /// Checks that the product over the six faces of every 3-face is 1.
    pub fn check_cocycle(&self) -> Result<()> {
        let n = self.crossings();
        let bad = (0..1u32 << n).into_par_iter().find_map_first(|w| {
            for c in 0..n {
                if w >> c & 1 == 1 {
                    continue;
                }
                for b in 0..c {
                    if w >> b & 1 == 1 {
                        continue;
                    }
                    for a in 0..b {
                        if w >> a & 1 == 1 {
                            continue;
                        }
                        let prod = self.get(w, a, b) as i32
                            * self.get(w | 1 << c, a, b) as i32
                            * self.get(w, a, c) as i32
                            * self.get(w | 1 << b, a, c) as i32
                            * self.get(w, b, c) as i32
                            * self.get(w | 1 << a, b, c) as i32;
                        if prod != 1 {
                            return Some((w, [a, b, c]));
                        }
                    }
                }
            }
            None
        });
        match bad {
            None => Ok(()),
            Some((vertex, crossings)) => Err(Error::NotCocycle { vertex, crossings }),
        }
    }
}

/// Type of the face `(w; c1, c2)`, read off from the two composites of odd
/// edge maps and, when both vanish, from the ladybug configuration.
pub fn face_type(cube: &KhovanovCube, w: u32, c1: usize, c2: usize) -> Result<FaceType> {
    let (v1, v2) = (w | 1 << c1, w | 1 << c2);
    let paths = [
        (cube.edge(w, c1), cube.edge(v1, c2)),
        (cube.edge(w, c2), cube.edge(v2, c1)),
    ];
    let res = cube.resolution(w);
    let mut active = 0u32;
    for c in [c1, c2] {
        for s in cube.diagram().site_segments(c) {
            active |= 1 << res.circle_of_segment(s);
        }
    }
    let mut ratio: Option<i32> = None;
    let mut buf1 = Vec::new();
    let mut buf2 = Vec::new();
    let mut sub = active;
    loop {
        let x = sub;
        let comps: Vec<Vec<(u32, i32)>> = paths
            .iter()
            .map(|(e1, e2)| {
                buf1.clear();
                e1.odd(x, &mut buf1);
                let mut acc: BTreeMap<u32, i32> = BTreeMap::new();
                for &(y, s) in &buf1 {
                    buf2.clear();
                    e2.odd(y, &mut buf2);
                    for &(z, t) in &buf2 {
                        *acc.entry(z).or_insert(0) += s * t;
                    }
                }
                acc.into_iter().filter(|(_, v)| *v != 0).collect()
            })
            .collect();
        let (a, b) = (&comps[0], &comps[1]);
        if !(a.is_empty() && b.is_empty()) {
            let r = if a == b {
                1
            } else if a.len() == b.len() && a.iter().zip(b).all(|(p, q)| p.0 == q.0 && p.1 == -q.1) {
                -1
            } else {
                0
            };
            if r == 0 || ratio.is_some_and(|old| old != r) {
                return Err(Error::IncomparableComposites { vertex: w, c1, c2 });
            }
            ratio = Some(r);
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & active;
    }
    match ratio {
        Some(1) => Ok(FaceType::C),
        Some(_) => Ok(FaceType::A),
        None => Ok(match classify_ladybug(cube.diagram(), w, c1, c2)? {
            LadybugType::X => FaceType::X,
            LadybugType::Y => FaceType::Y,
        }),
    }
}

/// Face types of every 2-face.
pub fn face_types(cube: &KhovanovCube) -> Result<FaceTypes> {
    let n = cube.crossings();
    let pairs = n * n.saturating_sub(1) / 2;
    let per_vertex: Result<Vec<Vec<FaceType>>> = (0..cube.vertices())
        .into_par_iter()
        .map(|w| {
            let mut out = vec![FaceType::C; pairs];
            for c2 in 0..n {
                for c1 in 0..c2 {
                    if w >> c1 & 1 == 0 && w >> c2 & 1 == 0 {
                        out[pair_index(c1, c2)] = face_type(cube, w, c1, c2)?;
                    }
                }
            }
            Ok(out)
        })
        .collect();
    Ok(FaceTypes {
        n,
        types: per_vertex?.into_iter().flatten().collect(),
    })
}

pub fn obstruction_cocycle(cube: &KhovanovCube, flavor: Flavor) -> Result<Obstruction> {
    Ok(Obstruction::new(face_types(cube)?, flavor))
}
