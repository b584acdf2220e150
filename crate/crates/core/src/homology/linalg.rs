//! Sparse elimination over prime fields and the integers, a bit-packed
//! dense kernel for GF(2), and Smith normal form.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub fn mod_p(v: i64, p: u32) -> u32 {
    v.rem_euclid(p as i64) as u32
}

/// Sparse vector: column index and entry, sorted by column.
pub type SparseRow<E> = Vec<(u32, E)>;

pub(crate) trait Arith {
    type E: Clone + PartialEq + std::fmt::Debug;
    fn from_i64(&self, v: i64) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn is_unit(&self, a: &Self::E) -> bool;
    /// Inverse of a unit.
    fn inv(&self, a: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Result<Self::E>;
    /// `a - b`.
    fn sub(&self, a: &Self::E, b: &Self::E) -> Result<Self::E>;
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct ModP {
    pub p: u64,
}

impl Arith for ModP {
    type E = u32;
    fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn is_unit(&self, a: &u32) -> bool {
        *a != 0
    }
    fn inv(&self, a: &u32) -> u32 {
        // Fermat inverse
        let (mut base, mut e, mut acc) = (*a as u64, self.p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        acc as u32
    }
    fn mul(&self, a: &u32, b: &u32) -> Result<u32> {
        Ok((*a as u64 * *b as u64 % self.p) as u32)
    }
    fn sub(&self, a: &u32, b: &u32) -> Result<u32> {
        Ok(((*a as u64 + self.p - *b as u64) % self.p) as u32)
    }
}

/// 64-bit integers; overflow is reported so the caller can switch to
/// arbitrary precision.
#[derive(Clone, Copy, Debug)]
pub(crate) struct CheckedInt;

impl Arith for CheckedInt {
    type E = i64;
    fn from_i64(&self, v: i64) -> i64 {
        v
    }
    fn is_zero(&self, a: &i64) -> bool {
        *a == 0
    }
    fn is_unit(&self, a: &i64) -> bool {
        a.abs() == 1
    }
    fn inv(&self, a: &i64) -> i64 {
        *a
    }
    fn mul(&self, a: &i64, b: &i64) -> Result<i64> {
        a.checked_mul(*b).ok_or(Error::Overflow)
    }
    fn sub(&self, a: &i64, b: &i64) -> Result<i64> {
        a.checked_sub(*b).ok_or(Error::Overflow)
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct BigInts;

impl Arith for BigInts {
    type E = BigInt;
    fn from_i64(&self, v: i64) -> BigInt {
        BigInt::from(v)
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn is_unit(&self, a: &BigInt) -> bool {
        a.abs().is_one()
    }
    fn inv(&self, a: &BigInt) -> BigInt {
        a.clone()
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> Result<BigInt> {
        Ok(a * b)
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> Result<BigInt> {
        Ok(a - b)
    }
}

/// Outcome of sparse elimination with unit pivots.
pub(crate) struct Elimination<E> {
    pub pivots: usize,
    /// Rows without a unit entry after reduction, restricted to non-pivot
    /// columns.
    pub remainder: Vec<SparseRow<E>>,
}

/// Eliminates with unit pivots. Rows are reduced against pivots in
/// insertion order, so each pivot row has no entries in earlier pivot
/// columns and the reduction terminates.
pub(crate) fn eliminate<A: Arith>(
    ar: &A,
    mut rows: Vec<SparseRow<A::E>>,
    ncols: usize,
) -> Result<Elimination<A::E>> {
    rows.sort_by_key(|r| r.len());
    let mut pivot_of_col: Vec<u32> = vec![u32::MAX; ncols];
    let mut pivot_rows: Vec<(u32, SparseRow<A::E>)> = Vec::new();
    let mut stalled: Vec<SparseRow<A::E>> = Vec::new();
    let reduce = |row: SparseRow<A::E>,
                  pivot_of_col: &[u32],
                  pivot_rows: &[(u32, SparseRow<A::E>)]|
     -> Result<HashMap<u32, A::E>> {
        let mut work: HashMap<u32, A::E> = HashMap::with_capacity(row.len() * 2);
        let mut heap = BinaryHeap::new();
        for (c, v) in row {
            let pi = pivot_of_col[c as usize];
            if pi != u32::MAX {
                heap.push(Reverse(pi));
            }
            work.insert(c, v);
        }
        while let Some(Reverse(pi)) = heap.pop() {
            let (pc, prow) = &pivot_rows[pi as usize];
            let Some(coef) = work.get(pc).cloned() else {
                continue;
            };
            let lead = prow
                .iter()
                .find(|(c, _)| c == pc)
                .map(|(_, v)| v.clone())
                .expect("pivot entry");
            let factor = ar.mul(&coef, &ar.inv(&lead))?;
            for (c, v) in prow {
                let delta = ar.mul(&factor, v)?;
                let cur = work.remove(c);
                let had = cur.is_some();
                let old = cur.unwrap_or_else(|| ar.from_i64(0));
                let new = ar.sub(&old, &delta)?;
                if !ar.is_zero(&new) {
                    work.insert(*c, new);
                    if !had {
                        let pj = pivot_of_col[*c as usize];
                        if pj != u32::MAX && pj > pi {
                            heap.push(Reverse(pj));
                        }
                    }
                }
            }
            debug_assert!(!work.contains_key(pc));
        }
        Ok(work)
    };
    for row in rows {
        let work = reduce(row, &pivot_of_col, &pivot_rows)?;
        if work.is_empty() {
            continue;
        }
        let pivot = work
            .iter()
            .filter(|(_, v)| ar.is_unit(v))
            .map(|(c, _)| *c)
            .min();
        let mut sorted: SparseRow<A::E> = work.into_iter().collect();
        sorted.sort_unstable_by_key(|(c, _)| *c);
        match pivot {
            Some(c) => {
                pivot_of_col[c as usize] = pivot_rows.len() as u32;
                pivot_rows.push((c, sorted));
            }
            None => stalled.push(sorted),
        }
    }
    let mut remainder = Vec::new();
    for row in stalled {
        let work = reduce(row, &pivot_of_col, &pivot_rows)?;
        let mut sorted: SparseRow<A::E> = work
            .into_iter()
            .filter(|(c, _)| pivot_of_col[*c as usize] == u32::MAX)
            .collect();
        if !sorted.is_empty() {
            sorted.sort_unstable_by_key(|(c, _)| *c);
            remainder.push(sorted);
        }
    }
    Ok(Elimination {
        pivots: pivot_rows.len(),
        remainder,
    })
}

/// Rank over GF(p) of a sparse matrix given by rows.
pub fn rank_mod_p(rows: &[SparseRow<i64>], ncols: usize, p: u32) -> usize {
    let ar = ModP { p: p as u64 };
    let rows: Vec<SparseRow<u32>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|(c, v)| (*c, mod_p(*v, p)))
                .filter(|(_, v)| *v != 0)
                .collect()
        })
        .collect();
    if p == 2 && rows.len().saturating_mul(ncols) <= 1 << 26 {
        return BitMatrix::from_sparse(&rows, ncols).rank();
    }
    rank_fp(rows, ncols, ar)
}

/// Field-only elimination with a dense scatter row and pivot rows scaled
/// to a leading one.
fn rank_fp(mut rows: Vec<SparseRow<u32>>, ncols: usize, ar: ModP) -> usize {
    let p = ar.p;
    rows.sort_by_key(|r| r.len());
    let mut pivot_of_col: Vec<u32> = vec![u32::MAX; ncols];
    let mut pivot_rows: Vec<(u32, SparseRow<u32>)> = Vec::new();
    let mut work: Vec<u64> = vec![0; ncols];
    let mut touched: Vec<u32> = Vec::new();
    let mut heap = BinaryHeap::new();
    for row in rows {
        touched.clear();
        for (c, v) in row {
            let pi = pivot_of_col[c as usize];
            if pi != u32::MAX {
                heap.push(Reverse(pi));
            }
            work[c as usize] = v as u64;
            touched.push(c);
        }
        while let Some(Reverse(pi)) = heap.pop() {
            let (pc, prow) = &pivot_rows[pi as usize];
            let factor = work[*pc as usize];
            if factor == 0 {
                continue;
            }
            let neg = p - factor;
            for &(c, v) in prow {
                let slot = &mut work[c as usize];
                let old = *slot;
                let new = (old + neg * v as u64) % p;
                *slot = new;
                if old == 0 && new != 0 {
                    touched.push(c);
                    let pj = pivot_of_col[c as usize];
                    if pj != u32::MAX && pj > pi {
                        heap.push(Reverse(pj));
                    }
                }
            }
        }
        let mut left: SparseRow<u32> = Vec::new();
        for &c in &touched {
            let v = std::mem::take(&mut work[c as usize]);
            if v != 0 {
                left.push((c, v as u32));
            }
        }
        if left.is_empty() {
            continue;
        }
        left.sort_unstable_by_key(|(c, _)| *c);
        let inv = ar.inv(&left[0].1) as u64;
        for e in left.iter_mut() {
            e.1 = (e.1 as u64 * inv % p) as u32;
        }
        pivot_of_col[left[0].0 as usize] = pivot_rows.len() as u32;
        pivot_rows.push((left[0].0, left));
    }
    pivot_rows.len()
}

/// Invariant factors (all nonzero, ascending by divisibility) of an integer
/// matrix given by sparse rows.
pub fn invariant_factors(rows: &[SparseRow<i64>], ncols: usize) -> Vec<BigInt> {
    match invariant_factors_with(&CheckedInt, rows.to_vec(), ncols) {
        Ok(f) => f,
        Err(Error::Overflow) => {
            let big: Vec<SparseRow<BigInt>> = rows
                .iter()
                .map(|r| r.iter().map(|(c, v)| (*c, BigInt::from(*v))).collect())
                .collect();
            invariant_factors_with(&BigInts, big, ncols).expect("bigint arithmetic")
        }
        Err(e) => panic!("unexpected elimination error: {e}"),
    }
}

fn invariant_factors_with<A: Arith>(ar: &A, rows: Vec<SparseRow<A::E>>, ncols: usize) -> Result<Vec<BigInt>>
where
    A::E: Into<BigInt>,
{
    let mut units = 0usize;
    let mut rows = rows;
    loop {
        let e = eliminate(ar, rows, ncols)?;
        units += e.pivots;
        if e.remainder.is_empty() {
            return Ok(vec![BigInt::one(); units]);
        }
        if e.pivots == 0 {
            let mut out = vec![BigInt::one(); units];
            out.extend(dense_snf(e.remainder));
            out.sort_by_key(|a| a.abs());
            return Ok(out);
        }
        rows = e.remainder;
    }
}

/// Smith normal form of a dense integer matrix; returns the nonzero
/// diagonal entries, each dividing the next.
fn dense_snf<E: Into<BigInt> + Clone>(rows: Vec<SparseRow<E>>) -> Vec<BigInt> {
    let mut cols: Vec<u32> = rows.iter().flat_map(|r| r.iter().map(|(c, _)| *c)).collect();
    cols.sort_unstable();
    cols.dedup();
    let index: HashMap<u32, usize> = cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut m: Vec<Vec<BigInt>> = rows
        .into_iter()
        .map(|r| {
            let mut dense = vec![BigInt::zero(); cols.len()];
            for (c, v) in r {
                dense[index[&c]] = v.into();
            }
            dense
        })
        .collect();
    snf_diagonal(&mut m)
}

pub fn snf_diagonal(m: &mut [Vec<BigInt>]) -> Vec<BigInt> {
    let nr = m.len();
    let nc = if nr == 0 { 0 } else { m[0].len() };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < nr.min(nc) {
        // pivot of minimal absolute value in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..nr {
            for j in t..nc {
                if !m[i][j].is_zero() && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..nr {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = m[i][t].div_floor(&m[t][t]);
                for j in t..nc {
                    let d = &q * &m[t][j];
                    m[i][j] -= d;
                }
                if !m[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..nc {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = m[t][j].div_floor(&m[t][t]);
                for row in m.iter_mut() {
                    let d = &q * &row[t];
                    row[j] -= d;
                }
                if !m[t][j].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                // divisibility of the rest of the block
                let bad = (t + 1..nr)
                    .flat_map(|i| (t + 1..nc).map(move |j| (i, j)))
                    .find(|&(i, j)| !(&m[i][j] % &m[t][t]).is_zero());
                match bad {
                    None => break,
                    Some((i, _)) => {
                        let (a, b) = m.split_at_mut(i);
                        for (x, y) in a[t].iter_mut().zip(b[0].iter()) {
                            *x += y;
                        }
                        continue;
                    }
                }
            }
            // move the smallest entry of row/column t into the corner
            let mut best = (t, t);
            for i in t..nr {
                if !m[i][t].is_zero() && m[i][t].abs() < m[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..nc {
                if !m[t][j].is_zero() && m[t][j].abs() < m[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            m.swap(t, best.0);
            for row in m.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    diag
}

/// Dense GF(2) matrix with rows packed into 64-bit words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    rows: Vec<Vec<u64>>,
    ncols: usize,
}

impl BitMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        BitMatrix {
            rows: vec![vec![0; ncols.div_ceil(64)]; nrows],
            ncols,
        }
    }

    pub fn from_sparse<E>(rows: &[SparseRow<E>], ncols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), ncols);
        for (i, r) in rows.iter().enumerate() {
            for (c, _) in r {
                m.flip(i, *c as usize);
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i][j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        if self.get(i, j) != v {
            self.flip(i, j);
        }
    }

    pub fn flip(&mut self, i: usize, j: usize) {
        self.rows[i][j / 64] ^= 1 << (j % 64);
    }

    pub fn rank(&self) -> usize {
        self.clone().row_reduce().len()
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn row_reduce(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.ncols {
            if r == self.rows.len() {
                break;
            }
            let (w, b) = (c / 64, c % 64);
            let Some(p) = (r..self.rows.len()).find(|&i| self.rows[i][w] >> b & 1 == 1) else {
                continue;
            };
            self.rows.swap(r, p);
            let pivot = self.rows[r].clone();
            for (i, row) in self.rows.iter_mut().enumerate() {
                if i != r && row[w] >> b & 1 == 1 {
                    for (x, y) in row.iter_mut().zip(&pivot) {
                        *x ^= y;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Solves `self * x = rhs`; `None` if inconsistent. Free variables are 0.
    /// On failure the index of an unsatisfiable row combination is not
    /// tracked; callers locate the offending equation themselves.
    pub fn solve(&self, rhs: &[bool]) -> Option<Vec<bool>> {
        assert_eq!(rhs.len(), self.rows.len());
        let mut aug = BitMatrix::zeros(self.rows.len(), self.ncols + 1);
        for (i, row) in self.rows.iter().enumerate() {
            for j in 0..self.ncols {
                if row[j / 64] >> (j % 64) & 1 == 1 {
                    aug.flip(i, j);
                }
            }
            if rhs[i] {
                aug.flip(i, self.ncols);
            }
        }
        let pivots = aug.row_reduce();
        if pivots.last() == Some(&self.ncols) {
            return None;
        }
        let mut x = vec![false; self.ncols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(r, self.ncols);
        }
        Some(x)
    }
}

/// Converts a nonzero invariant factor to `u64` when it fits.
pub fn factor_u64(f: &BigInt) -> Option<u64> {
    f.to_u64()
}
