use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use super::complex::GradedChainComplex;
use super::linalg::{rank_mod_p, SparseRow};
use super::ranks::is_prime;
use crate::error::{Error, Result};

/// A chain automorphism of order `p` permuting generators up to sign:
/// generator `i` goes to `sign[i] * image[i]`.
#[derive(Clone, Copy, Debug)]
pub struct SignedPermutation<'a> {
    pub p: u32,
    pub image: &'a [u32],
    pub sign: &'a [i8],
}

/// Tate homology of one `(q, k)` summand in the middle total degrees of a
/// truncated window, for two window sizes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TateSummand {
    pub q: i32,
    pub k: i32,
    /// Total degree to dimension with window `B`.
    pub window: BTreeMap<i32, usize>,
    /// Same degrees with window `B + 2`.
    pub wider: BTreeMap<i32, usize>,
}

impl TateSummand {
    pub fn is_stable(&self) -> bool {
        self.window == self.wider
    }
}

/// Middle total degrees `c` and `c + 1` of the window, `c` the midpoint of
/// the range of total degrees.
fn middle_degrees(hmin: i32, hmax: i32, b: i32) -> [i32; 2] {
    let (lo, hi) = (hmin - b, hmax + b);
    let c = (lo + hi).div_euclid(2);
    [c, c + 1]
}

/// Tate complex of one summand: columns `θ ∈ [-b, b]`, each a copy of the
/// summand, with horizontal map `1 - ψ` out of even columns and the norm
/// out of odd ones. `D = d + (-1)^h H` in total degree `h + θ`.
fn tate_block(
    c: &GradedChainComplex,
    act: SignedPermutation<'_>,
    gens: &BTreeMap<i32, Vec<usize>>,
    b: i32,
    degrees: &[i32],
) -> BTreeMap<i32, usize> {
    let p = act.p;
    let mut local: HashMap<usize, (i32, u32)> = HashMap::new();
    for (&h, g) in gens {
        for (i, &x) in g.iter().enumerate() {
            local.insert(x, (h, i as u32));
        }
    }
    // cells of total degree m: (θ, generator) with h + θ = m
    let cells = |m: i32| -> Vec<(i32, usize)> {
        let mut out = Vec::new();
        for (&h, g) in gens {
            let th = m - h;
            if (-b..=b).contains(&th) {
                out.extend(g.iter().map(|&x| (th, x)));
            }
        }
        out
    };
    let rank_from = |m: i32| -> usize {
        let src = cells(m);
        let tgt = cells(m + 1);
        let index: HashMap<(i32, usize), u32> =
            tgt.iter().enumerate().map(|(i, &cell)| (cell, i as u32)).collect();
        let rows: Vec<SparseRow<i64>> = src
            .par_iter()
            .map(|&(th, x)| {
                let (h, _) = local[&x];
                let mut acc: BTreeMap<u32, i64> = BTreeMap::new();
                for (y, v) in c.column(x) {
                    if let Some(&j) = index.get(&(th, y)) {
                        *acc.entry(j).or_insert(0) += v;
                    }
                }
                if th < b {
                    let hs: i64 = if h % 2 == 0 { 1 } else { -1 };
                    let mut push = |y: usize, v: i64| {
                        if let Some(&j) = index.get(&(th + 1, y)) {
                            *acc.entry(j).or_insert(0) += hs * v;
                        }
                    };
                    let (mut y, mut s) = (x, 1i64);
                    if th.rem_euclid(2) == 0 {
                        push(x, 1);
                        push(act.image[x] as usize, -(act.sign[x] as i64));
                    } else {
                        for _ in 0..p {
                            push(y, s);
                            s *= act.sign[y] as i64;
                            y = act.image[y] as usize;
                        }
                    }
                }
                acc.into_iter()
                    .map(|(j, v)| (j, v.rem_euclid(p as i64)))
                    .filter(|(_, v)| *v != 0)
                    .collect()
            })
            .collect();
        rank_mod_p(&rows, tgt.len(), p)
    };
    let mut ranks: BTreeMap<i32, usize> = BTreeMap::new();
    for &m in degrees {
        for d in [m - 1, m] {
            ranks.entry(d).or_insert_with(|| rank_from(d));
        }
    }
    degrees
        .iter()
        .map(|&m| (m, cells(m).len() - ranks[&m] - ranks[&(m - 1)]))
        .collect()
}

/// Tate homology of a complex with a cyclic action, summand by summand, in
/// the two middle total degrees of the windows `b` and `b + 2`. The
/// default window is the homological width plus two.
pub fn tate_homology(c: &GradedChainComplex, act: SignedPermutation<'_>, window: Option<i32>) -> Result<Vec<TateSummand>> {
    if !is_prime(act.p) {
        return Err(Error::NotPrime(act.p));
    }
    if act.image.len() != c.len() || act.sign.len() != c.len() {
        return Err(Error::Invalid("action and complex differ in size".into()));
    }
    let reduced = c.reduce_mod(act.p);
    let blocks = reduced.blocks();
    let mut out = Vec::with_capacity(blocks.len());
    for ((q, k), gens) in blocks {
        let hmin = *gens.keys().next().unwrap();
        let hmax = *gens.keys().last().unwrap();
        let b = window.unwrap_or(hmax - hmin + 2);
        let mid = middle_degrees(hmin, hmax, b);
        let w1 = tate_block(&reduced, act, &gens, b, &mid);
        let w2 = tate_block(&reduced, act, &gens, b + 2, &mid);
        out.push(TateSummand {
            q,
            k,
            window: w1,
            wider: w2,
        });
    }
    Ok(out)
}
