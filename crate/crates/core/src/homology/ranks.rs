use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::complex::{GradedChainComplex, SummandKey};
use super::linalg::{invariant_factors, rank_mod_p, SparseRow};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    Integers,
    Rationals,
    /// GF(p) for a prime `p`.
    Prime(u32),
}

impl Ring {
    pub fn prime(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Ring::Prime(p))
    }
}

impl FromStr for Ring {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Z" | "z" => Ok(Ring::Integers),
            "Q" | "q" => Ok(Ring::Rationals),
            _ => {
                let p: u32 = s
                    .parse()
                    .map_err(|_| Error::Ring(format!("unknown field `{s}` (use Q, Z or a prime)")))?;
                Ring::prime(p)
            }
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::Rationals => write!(f, "Q"),
            Ring::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl Serialize for Ring {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Homology of one graded piece: free rank and torsion orders.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RankEntry {
    pub rank: usize,
    #[serde(skip_serializing_if = "Vec::is_empty", serialize_with = "ser_torsion")]
    pub torsion: Vec<BigInt>,
}

fn ser_torsion<S: Serializer>(t: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(t.iter().map(|x| x.to_string()))
}

/// Graded homology keyed by `(h, q, k)`; `k` is zero for theories that do
/// not preserve it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedRanks {
    pub ring: Ring,
    pub annular: bool,
    pub entries: BTreeMap<(i32, i32, i32), RankEntry>,
}

impl GradedRanks {
    pub fn rank(&self, h: i32, q: i32, k: i32) -> usize {
        self.entries.get(&(h, q, k)).map_or(0, |e| e.rank)
    }

    pub fn torsion(&self, h: i32, q: i32, k: i32) -> &[BigInt] {
        self.entries.get(&(h, q, k)).map_or(&[], |e| &e.torsion)
    }

    /// Sum of free ranks.
    pub fn total_rank(&self) -> usize {
        self.entries.values().map(|e| e.rank).sum()
    }

    /// Free ranks summed over `h`, keyed by `(q, k)`.
    pub fn by_quantum(&self) -> BTreeMap<(i32, i32), usize> {
        let mut out = BTreeMap::new();
        for (&(_, q, k), e) in &self.entries {
            if e.rank > 0 {
                *out.entry((q, k)).or_insert(0) += e.rank;
            }
        }
        out
    }

    /// Non-zero free ranks as `(h, q, k, rank)`.
    pub fn nonzero(&self) -> Vec<(i32, i32, i32, usize)> {
        self.entries
            .iter()
            .filter(|(_, e)| e.rank > 0)
            .map(|(&(h, q, k), e)| (h, q, k, e.rank))
            .collect()
    }

    /// Ranks only, dropping empty entries; handy for comparisons.
    pub fn rank_table(&self) -> BTreeMap<(i32, i32, i32), usize> {
        self.entries
            .iter()
            .filter(|(_, e)| e.rank > 0)
            .map(|(k, e)| (*k, e.rank))
            .collect()
    }

    /// Plain-text table, one line per nonzero group.
    pub fn render(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("# ring {}\n", self.ring));
        if self.annular {
            s.push_str("# h q k  rank torsion\n");
        } else {
            s.push_str("# h q  rank torsion\n");
        }
        for (&(h, q, k), e) in &self.entries {
            if e.rank == 0 && e.torsion.is_empty() {
                continue;
            }
            let tors: Vec<String> = e.torsion.iter().map(|t| format!("Z/{t}")).collect();
            if self.annular {
                s.push_str(&format!("{h} {q} {k}  {} {}\n", e.rank, tors.join(" ")));
            } else {
                s.push_str(&format!("{h} {q}  {} {}\n", e.rank, tors.join(" ")));
            }
        }
        s
    }
}

impl Serialize for GradedRanks {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Row {
            h: i32,
            q: i32,
            #[serde(skip_serializing_if = "Option::is_none")]
            k: Option<i32>,
            rank: usize,
            #[serde(skip_serializing_if = "Vec::is_empty")]
            torsion: Vec<String>,
        }
        #[derive(Serialize)]
        struct Out {
            ring: Ring,
            annular: bool,
            total_rank: usize,
            groups: Vec<Row>,
        }
        let groups = self
            .entries
            .iter()
            .filter(|(_, e)| e.rank > 0 || !e.torsion.is_empty())
            .map(|(&(h, q, k), e)| Row {
                h,
                q,
                k: self.annular.then_some(k),
                rank: e.rank,
                torsion: e.torsion.iter().map(|t| t.to_string()).collect(),
            })
            .collect();
        Out {
            ring: self.ring,
            annular: self.annular,
            total_rank: self.total_rank(),
            groups,
        }
        .serialize(s)
    }
}

struct BlockResult {
    key: (i32, i32),
    h: i32,
    dim: usize,
    /// rank and torsion of the differential leaving degree h
    rank_out: usize,
    torsion_out: Vec<BigInt>,
}

/// Homology of a complex over the given ring, summand by summand.
pub fn homology(c: &GradedChainComplex, ring: Ring) -> Result<GradedRanks> {
    if let Ring::Prime(p) = ring {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
    }
    let blocks = c.blocks();
    let jobs: Vec<((i32, i32), i32, &Vec<usize>, Option<&Vec<usize>>)> = blocks
        .iter()
        .flat_map(|(key, by_h)| {
            by_h.iter()
                .map(move |(h, gens)| (*key, *h, gens, by_h.get(&(h + c.degree()))))
        })
        .collect();
    let results: Vec<BlockResult> = jobs
        .par_iter()
        .map(|&(key, h, gens, targets)| {
            let (rank_out, torsion_out) = match targets {
                None => (0, Vec::new()),
                Some(t) => block_rank(c, gens, t, ring),
            };
            BlockResult {
                key,
                h,
                dim: gens.len(),
                rank_out,
                torsion_out,
            }
        })
        .collect();
    let mut out_rank: BTreeMap<((i32, i32), i32), (usize, usize, Vec<BigInt>)> = BTreeMap::new();
    for r in results {
        out_rank.insert((r.key, r.h), (r.dim, r.rank_out, r.torsion_out));
    }
    let mut entries = BTreeMap::new();
    for (&(key, h), (dim, rank_out, _)) in &out_rank {
        let rank_in = out_rank
            .get(&(key, h - c.degree()))
            .map_or(0, |(_, r, _)| *r);
        let torsion = match ring {
            Ring::Integers => out_rank
                .get(&(key, h - c.degree()))
                .map_or(Vec::new(), |(_, _, t)| t.clone()),
            _ => Vec::new(),
        };
        let rank = dim - rank_out - rank_in;
        let (q, k) = key;
        entries.insert((h, q, k), RankEntry { rank, torsion });
    }
    Ok(GradedRanks {
        ring,
        annular: c.summands() == SummandKey::QuantumAnnular,
        entries,
    })
}

/// Rank (and torsion over Z) of the differential from `gens` to `targets`.
fn block_rank(c: &GradedChainComplex, gens: &[usize], targets: &[usize], ring: Ring) -> (usize, Vec<BigInt>) {
    let mut index = std::collections::HashMap::with_capacity(targets.len());
    for (i, &t) in targets.iter().enumerate() {
        index.insert(t, i as u32);
    }
    let rows: Vec<SparseRow<i64>> = gens
        .iter()
        .map(|&g| {
            let mut r: SparseRow<i64> = c
                .column(g)
                .map(|(t, v)| (*index.get(&t).expect("differential leaves its summand"), v))
                .collect();
            r.sort_unstable_by_key(|(c, _)| *c);
            r
        })
        .filter(|r| !r.is_empty())
        .collect();
    match ring {
        Ring::Prime(p) => (rank_mod_p(&rows, targets.len(), p), Vec::new()),
        Ring::Integers | Ring::Rationals => {
            let f = invariant_factors(&rows, targets.len());
            let tors = f.iter().filter(|x| !x.is_one()).cloned().collect();
            (f.len(), if ring == Ring::Integers { tors } else { Vec::new() })
        }
    }
}
