use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::linalg::mod_p;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Grading {
    pub h: i32,
    pub q: i32,
    pub k: i32,
}

/// Which gradings the differential preserves besides shifting `h`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SummandKey {
    /// Summands indexed by `q`.
    Quantum,
    /// Summands indexed by `(q, k)`.
    QuantumAnnular,
    /// No splitting beyond `h`.
    None,
}

impl SummandKey {
    pub fn key(self, g: &Grading) -> (i32, i32) {
        match self {
            SummandKey::Quantum => (g.q, 0),
            SummandKey::QuantumAnnular => (g.q, g.k),
            SummandKey::None => (0, 0),
        }
    }
}

/// A finitely generated free complex with integer matrix entries.
///
/// The differential takes degree `h` to `h + degree`; entries are stored by
/// source generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedChainComplex {
    gradings: Vec<Grading>,
    col_ptr: Vec<usize>,
    rows: Vec<u32>,
    vals: Vec<i64>,
    degree: i32,
    summands: SummandKey,
}

impl GradedChainComplex {
    /// Builds a complex from `(target, source, value)` triplets; repeated
    /// positions are summed and zeros dropped.
    pub fn from_triplets(
        gradings: Vec<Grading>,
        mut triplets: Vec<(u32, u32, i64)>,
        degree: i32,
        summands: SummandKey,
    ) -> Self {
        triplets.sort_unstable_by_key(|&(r, c, _)| (c, r));
        let n = gradings.len();
        let mut col_ptr = Vec::with_capacity(n + 1);
        let mut rows = Vec::with_capacity(triplets.len());
        let mut vals = Vec::with_capacity(triplets.len());
        col_ptr.push(0);
        let mut it = triplets.into_iter().peekable();
        for col in 0..n as u32 {
            while let Some(&(r, c, _)) = it.peek() {
                if c != col {
                    break;
                }
                let mut v = 0i64;
                while let Some(&(r2, c2, v2)) = it.peek() {
                    if r2 != r || c2 != c {
                        break;
                    }
                    v += v2;
                    it.next();
                }
                if v != 0 {
                    rows.push(r);
                    vals.push(v);
                }
            }
            col_ptr.push(rows.len());
        }
        debug_assert!(it.next().is_none(), "triplet source out of range");
        GradedChainComplex {
            gradings,
            col_ptr,
            rows,
            vals,
            degree,
            summands,
        }
    }

    pub fn len(&self) -> usize {
        self.gradings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gradings.is_empty()
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn summands(&self) -> SummandKey {
        self.summands
    }

    pub fn gradings(&self) -> &[Grading] {
        &self.gradings
    }

    pub fn grading(&self, i: usize) -> Grading {
        self.gradings[i]
    }

    pub fn nnz(&self) -> usize {
        self.rows.len()
    }

    /// Entries `(target, value)` of the image of generator `col`.
    pub fn column(&self, col: usize) -> impl Iterator<Item = (usize, i64)> + '_ {
        let (a, b) = (self.col_ptr[col], self.col_ptr[col + 1]);
        self.rows[a..b]
            .iter()
            .zip(&self.vals[a..b])
            .map(|(&r, &v)| (r as usize, v))
    }

    pub fn entry(&self, row: usize, col: usize) -> i64 {
        let (a, b) = (self.col_ptr[col], self.col_ptr[col + 1]);
        match self.rows[a..b].binary_search(&(row as u32)) {
            Ok(i) => self.vals[a + i],
            Err(_) => 0,
        }
    }

    pub fn triplets(&self) -> Vec<(u32, u32, i64)> {
        (0..self.len())
            .flat_map(|c| self.column(c).map(move |(r, v)| (r as u32, c as u32, v)))
            .collect()
    }

    /// Reduces entries modulo `p` (into `(-p/2, p/2]`) and drops zeros.
    pub fn reduce_mod(&self, p: u32) -> Self {
        let trips = self
            .triplets()
            .into_iter()
            .filter_map(|(r, c, v)| {
                let m = mod_p(v, p) as i64;
                let m = if m > p as i64 / 2 { m - p as i64 } else { m };
                (m != 0).then_some((r, c, m))
            })
            .collect();
        Self::from_triplets(self.gradings.clone(), trips, self.degree, self.summands)
    }

    /// Transposed complex on the same generators, with `h` negated.
    pub fn dual(&self) -> Self {
        let gradings = self
            .gradings
            .iter()
            .map(|g| Grading {
                h: -g.h,
                q: -g.q,
                k: -g.k,
            })
            .collect();
        let trips = self
            .triplets()
            .into_iter()
            .map(|(r, c, v)| (c, r, v))
            .collect();
        Self::from_triplets(gradings, trips, self.degree, self.summands)
    }

    /// Checks that every entry shifts gradings as declared.
    pub fn respects_gradings(&self) -> bool {
        (0..self.len()).all(|c| {
            let g = self.gradings[c];
            self.column(c).all(|(r, _)| {
                let t = self.gradings[r];
                t.h == g.h + self.degree && self.summands.key(&t) == self.summands.key(&g)
            })
        })
    }

    /// Whether `d∘d` vanishes, over the integers or modulo `p`.
    pub fn squares_to_zero(&self, modulus: Option<u32>) -> bool {
        let reduce = |v: i64| match modulus {
            Some(p) => mod_p(v, p) as i64,
            None => v,
        };
        (0..self.len()).all(|c| {
            let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
            for (mid, v) in self.column(c) {
                for (r, w) in self.column(mid) {
                    *acc.entry(r).or_insert(0) += v * w;
                }
            }
            acc.values().all(|&v| reduce(v) == 0)
        })
    }

    /// Generator indices grouped by summand key and then by `h`.
    pub fn blocks(&self) -> BTreeMap<(i32, i32), BTreeMap<i32, Vec<usize>>> {
        let mut out: BTreeMap<(i32, i32), BTreeMap<i32, Vec<usize>>> = BTreeMap::new();
        for (i, g) in self.gradings.iter().enumerate() {
            out.entry(self.summands.key(g))
                .or_default()
                .entry(g.h)
                .or_default()
                .push(i);
        }
        out
    }

    /// Restriction to a set of generators closed under the differential.
    pub fn restrict(&self, keep: &[usize]) -> Self {
        let mut index = vec![u32::MAX; self.len()];
        for (new, &old) in keep.iter().enumerate() {
            index[old] = new as u32;
        }
        let gradings = keep.iter().map(|&i| self.gradings[i]).collect();
        let mut trips = Vec::new();
        for (new_c, &old_c) in keep.iter().enumerate() {
            for (r, v) in self.column(old_c) {
                let nr = index[r];
                assert_ne!(nr, u32::MAX, "restriction is not a subcomplex");
                trips.push((nr, new_c as u32, v));
            }
        }
        Self::from_triplets(gradings, trips, self.degree, self.summands)
    }

    /// Drops entries between different summands of `key`.
    pub fn project(&self, key: SummandKey) -> Self {
        let trips = self
            .triplets()
            .into_iter()
            .filter(|&(r, c, _)| key.key(&self.gradings[r as usize]) == key.key(&self.gradings[c as usize]))
            .collect();
        Self::from_triplets(self.gradings.clone(), trips, self.degree, key)
    }
}
