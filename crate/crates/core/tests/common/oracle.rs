//! A slow, direct Khovanov homology computation used as a test oracle. It
//! parses the word text itself, traces circles with a union-find over
//! strand points, builds every matrix densely and takes ranks by
//! fraction-free elimination over the integers or by elimination mod p.
//! Only words whose crossings are all braid-like (every strand oriented
//! the same way) are supported, so crossing signs are read off `x+`/`x-`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

#[derive(Clone, Copy, Debug)]
enum Ev {
    Cross(usize, bool),
    Cup(usize),
    Cap(usize),
}

pub struct Oracle {
    strands: usize,
    events: Vec<Ev>,
    counts: Vec<usize>,
}

/// Rank over `None` (the rationals) or `Some(p)`.
pub type Field = Option<u64>;

impl Oracle {
    pub fn parse(text: &str) -> Oracle {
        let mut strands = 0;
        let mut events = Vec::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap().trim();
            let t: Vec<&str> = line.split_whitespace().collect();
            match t.as_slice() {
                [] => {}
                ["strands", m] => strands = m.parse().unwrap(),
                ["x+", i] => events.push(Ev::Cross(i.parse().unwrap(), true)),
                ["x-", i] => events.push(Ev::Cross(i.parse().unwrap(), false)),
                ["u", i] => events.push(Ev::Cup(i.parse().unwrap())),
                ["n", i] => events.push(Ev::Cap(i.parse().unwrap())),
                other => panic!("oracle cannot read {other:?}"),
            }
        }
        let mut counts = vec![strands];
        for e in &events {
            let c = *counts.last().unwrap();
            counts.push(match e {
                Ev::Cross(..) => c,
                Ev::Cup(_) => c + 2,
                Ev::Cap(_) => c - 2,
            });
        }
        assert_eq!(counts.pop(), Some(strands));
        Oracle { strands, events, counts }
    }

    fn crossings(&self) -> Vec<bool> {
        self.events
            .iter()
            .filter_map(|e| match e {
                Ev::Cross(_, s) => Some(*s),
                _ => None,
            })
            .collect()
    }

    fn node(&self, slice: usize, pos: usize) -> usize {
        let base: usize = self.counts[..slice].iter().sum();
        base + pos - 1
    }

    /// Circles at a vertex as lists of strand points, sorted by least point,
    /// with whether each meets the seam slice an odd number of times.
    fn circles(&self, v: u32) -> (Vec<usize>, Vec<bool>) {
        let total: usize = self.counts.iter().sum::<usize>().max(self.strands);
        let mut parent: Vec<usize> = (0..total).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut join = |a: usize, b: usize| {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra.max(rb)] = ra.min(rb);
        };
        let k = self.events.len();
        let mut c = 0;
        for (s, e) in self.events.iter().enumerate() {
            let t = (s + 1) % k;
            let m = self.counts[s];
            match *e {
                Ev::Cross(i, pos) => {
                    let one = v >> c & 1 == 1;
                    c += 1;
                    let turnback = one == pos;
                    for j in 1..=m {
                        if !(turnback && (j == i || j == i + 1)) {
                            join(self.node(s, j), self.node(t, j));
                        }
                    }
                    if turnback {
                        join(self.node(s, i), self.node(s, i + 1));
                        join(self.node(t, i), self.node(t, i + 1));
                    }
                }
                Ev::Cup(i) => {
                    for j in 1..=m {
                        join(self.node(s, j), self.node(t, if j < i { j } else { j + 2 }));
                    }
                    join(self.node(t, i), self.node(t, i + 1));
                }
                Ev::Cap(i) => {
                    for j in 1..=m {
                        if j < i {
                            join(self.node(s, j), self.node(t, j));
                        } else if j > i + 1 {
                            join(self.node(s, j), self.node(t, j - 2));
                        }
                    }
                    join(self.node(s, i), self.node(s, i + 1));
                }
            }
        }
        let roots: Vec<usize> = (0..total).map(|x| find(&mut parent, x)).collect();
        let mut reps: Vec<usize> = roots.clone();
        reps.sort();
        reps.dedup();
        let of: Vec<usize> = roots.iter().map(|r| reps.binary_search(r).unwrap()).collect();
        let mut odd = vec![false; reps.len()];
        for j in 1..=self.strands {
            odd[of[j - 1]] ^= true;
        }
        (of, odd)
    }

    /// `(h, q, k) -> dimension`; `k` is 0 unless `annular`.
    pub fn homology(&self, field: Field, annular: bool) -> BTreeMap<(i32, i32, i32), usize> {
        let signs = self.crossings();
        let n = signs.len();
        let np = signs.iter().filter(|&&s| s).count() as i32;
        let nm = n as i32 - np;
        let res: Vec<(Vec<usize>, Vec<bool>)> = (0..1u32 << n).map(|v| self.circles(v)).collect();
        // generators: (vertex, labels), labels bit i set = circle i is x
        let mut index: BTreeMap<(u32, u32), usize> = BTreeMap::new();
        let mut grade = Vec::new();
        for v in 0..1u32 << n {
            let z = res[v as usize].1.len();
            for l in 0..1u32 << z {
                let minus = l.count_ones() as i32;
                let w = v.count_ones() as i32;
                let k: i32 = (0..z)
                    .filter(|&i| res[v as usize].1[i])
                    .map(|i| if l >> i & 1 == 1 { -1 } else { 1 })
                    .sum();
                index.insert((v, l), grade.len());
                grade.push((w - nm, z as i32 - 2 * minus + w + np - 2 * nm, if annular { k } else { 0 }));
            }
        }
        let mut entries: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for v in 0..1u32 << n {
            for c in 0..n {
                if v >> c & 1 == 1 {
                    continue;
                }
                let u = v | 1 << c;
                let sign = if (v & ((1 << c) - 1)).count_ones() % 2 == 0 { 1 } else { -1 };
                let (a, _) = &res[v as usize];
                let (b, _) = &res[u as usize];
                let za = res[v as usize].1.len();
                let zb = res[u as usize].1.len();
                // circle correspondence through shared points
                let mut meets = vec![Vec::new(); za];
                for (x, &ca) in a.iter().enumerate() {
                    if !meets[ca].contains(&b[x]) {
                        meets[ca].push(b[x]);
                    }
                }
                for l in 0..1u32 << za {
                    let mut out: Vec<u32> = vec![0];
                    // build the image label by label
                    let mut merged: Vec<(usize, usize)> = Vec::new();
                    let mut split = None;
                    let mut inv = vec![Vec::new(); zb];
                    for ca in 0..za {
                        for &cb in &meets[ca] {
                            inv[cb].push(ca);
                        }
                    }
                    for cb in 0..zb {
                        if inv[cb].len() == 2 {
                            merged.push((inv[cb][0], cb));
                            merged.push((inv[cb][1], cb));
                        }
                    }
                    for ca in 0..za {
                        if meets[ca].len() == 2 {
                            split = Some(ca);
                        }
                    }
                    let minus = |c: usize| l >> c & 1 == 1;
                    for ca in 0..za {
                        if merged.iter().any(|&(x, _)| x == ca) || split == Some(ca) {
                            continue;
                        }
                        let cb = meets[ca][0];
                        if minus(ca) {
                            out.iter_mut().for_each(|o| *o |= 1 << cb);
                        }
                    }
                    if let (Some(&(x, cb)), Some(&(y, _))) = (merged.first(), merged.get(1)) {
                        match (minus(x), minus(y)) {
                            (true, true) => out.clear(),
                            (false, false) => {}
                            _ => out.iter_mut().for_each(|o| *o |= 1 << cb),
                        }
                    }
                    if let Some(ca) = split {
                        let (b1, b2) = (meets[ca][0], meets[ca][1]);
                        if minus(ca) {
                            out.iter_mut().for_each(|o| *o |= 1 << b1 | 1 << b2);
                        } else {
                            out = out.iter().flat_map(|&o| [o | 1 << b1, o | 1 << b2]).collect();
                        }
                    }
                    let src = index[&(v, l)];
                    for o in out {
                        let dst = index[&(u, o)];
                        if grade[src].2 != grade[dst].2 {
                            continue;
                        }
                        *entries.entry((dst, src)).or_insert(0) += sign;
                    }
                }
            }
        }
        // blocks by (q, k), matrices by h
        let mut dims: BTreeMap<(i32, i32, i32), usize> = BTreeMap::new();
        for g in &grade {
            *dims.entry(*g).or_insert(0) += 1;
        }
        let mut rank_out: BTreeMap<(i32, i32, i32), usize> = BTreeMap::new();
        for &(h, q, k) in dims.keys() {
            let rows: Vec<usize> = (0..grade.len()).filter(|&i| grade[i] == (h + 1, q, k)).collect();
            let cols: Vec<usize> = (0..grade.len()).filter(|&i| grade[i] == (h, q, k)).collect();
            let m: Vec<Vec<i64>> = rows
                .iter()
                .map(|&r| cols.iter().map(|&c| *entries.get(&(r, c)).unwrap_or(&0)).collect())
                .collect();
            rank_out.insert((h, q, k), rank(m, field));
        }
        let mut out = BTreeMap::new();
        for (&(h, q, k), &d) in &dims {
            let r_in = rank_out.get(&(h - 1, q, k)).copied().unwrap_or(0);
            let r_out = rank_out[&(h, q, k)];
            let dimh = d - r_in - r_out;
            if dimh > 0 {
                out.insert((h, q, k), dimh);
            }
        }
        out
    }
}

fn rank(m: Vec<Vec<i64>>, field: Field) -> usize {
    match field {
        Some(p) => rank_mod(m, p),
        None => rank_bareiss(m),
    }
}

fn rank_mod(m: Vec<Vec<i64>>, p: u64) -> usize {
    let mut a: Vec<Vec<u64>> = m
        .into_iter()
        .map(|r| r.into_iter().map(|x| x.rem_euclid(p as i64) as u64).collect())
        .collect();
    let ncols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = pow(a[r][c], p - 2, p);
        for i in 0..a.len() {
            if i != r && a[i][c] != 0 {
                let f = a[i][c] * inv % p;
                for j in 0..ncols {
                    a[i][j] = (a[i][j] + p * p - f * a[r][j] % p) % p;
                }
            }
        }
        r += 1;
    }
    r
}

fn pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Fraction-free elimination; exact rank over the rationals.
fn rank_bareiss(m: Vec<Vec<i64>>) -> usize {
    let mut a: Vec<Vec<BigInt>> = m.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
    let ncols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::from(1);
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, piv);
        for i in r + 1..a.len() {
            for j in c + 1..ncols {
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].abs();
        r += 1;
    }
    r
}
