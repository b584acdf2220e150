use std::collections::BTreeMap;

use serde::Serialize;

use super::action::ChainAction;
use super::fixed::fixed_subcomplex;
use super::lift::LiftOrder;
use super::pair::PeriodicPair;
use crate::cube::{build_complex, EdgeAssignment, Flavor, KhComplex, Theory};
use crate::error::{Error, Result};
use crate::homology::{homology, is_prime, tate_homology, GradedRanks, Ring, SignedPermutation, TateSummand};

/// The complexes needed to compare a cover with its quotient: the cover in
/// plain and annular form, the annular quotient, and the cover assignment
/// for odd theories.
pub struct PeriodicComplexes {
    pub cover: KhComplex,
    pub cover_annular: KhComplex,
    pub quotient: KhComplex,
    pub quotient_annular: KhComplex,
    pub cover_eps: Option<EdgeAssignment>,
}

impl PeriodicComplexes {
    pub fn new(pair: &PeriodicPair, odd: bool, flavor: Flavor) -> Result<Self> {
        let (plain, annular) = if odd {
            (Theory::Odd, Theory::AnnularOdd)
        } else {
            (Theory::Even, Theory::AnnularEven)
        };
        let cover_eps = if odd {
            Some(pair.equivariant_edge_assignment(flavor)?)
        } else {
            None
        };
        let base_eps = cover_eps.as_ref().map(|e| pair.quotient_edge_assignment(e));
        Ok(PeriodicComplexes {
            cover: build_complex(&pair.cover, plain, cover_eps.as_ref())?,
            cover_annular: build_complex(&pair.cover, annular, cover_eps.as_ref())?,
            quotient: build_complex(&pair.base, plain, base_eps.as_ref())?,
            quotient_annular: build_complex(&pair.base, annular, base_eps.as_ref())?,
            cover_eps,
        })
    }
}

/// One graded piece of the Smith inequality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmithEntry {
    pub q: i32,
    /// `None` for the plain cover, where several annular gradings fold
    /// into one quantum grading.
    pub k: Option<i32>,
    pub cover: usize,
    pub quotient: usize,
}

impl SmithEntry {
    pub fn holds(&self) -> bool {
        self.cover >= self.quotient
    }
}

/// Options for [`smith_verify`].
#[derive(Clone, Copy, Debug, Default)]
pub struct SmithOptions {
    pub flavor: Flavor,
    /// Must equal `p` when given.
    pub field: Option<u32>,
    /// Also compare Tate homology of the cover with the quotient.
    pub tate: bool,
    pub window: Option<i32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SmithReport {
    pub p: u32,
    pub theory: String,
    pub field: String,
    /// Odd homology with `p = 2` is computed through the even functor,
    /// which agrees with the odd one over `F_2`.
    pub via_even: bool,
    /// `dim Kh(L̃)`.
    pub cover_total: usize,
    /// `dim AKh(L̃)`.
    pub cover_annular_total: usize,
    /// `dim AKh(L)`.
    pub quotient_total: usize,
    /// `dim Kh(L)`.
    pub quotient_plain_total: usize,
    /// `AKh(L̃) >= Kh(L̃) >= AKh(L) >= Kh(L)`.
    pub chain: [bool; 3],
    /// Homology of the fixed complex computed directly from cover maps.
    pub fixed_total: usize,
    /// Entries where the fixed complex and the quotient complex differ.
    pub chain_mismatches: usize,
    pub refined: Vec<SmithEntry>,
    pub annular_refined: Vec<SmithEntry>,
    pub tate: Option<bool>,
    pub holds: bool,
}

fn quotient_by_cover_grading(ak: &GradedRanks, p: u32) -> (BTreeMap<i32, usize>, BTreeMap<(i32, i32), usize>) {
    let p = p as i32;
    let mut plain = BTreeMap::new();
    let mut annular = BTreeMap::new();
    for ((_, j, k), e) in &ak.entries {
        if e.rank == 0 {
            continue;
        }
        let q = p * j - (p - 1) * k;
        *plain.entry(q).or_insert(0) += e.rank;
        *annular.entry((q, *k)).or_insert(0) += e.rank;
    }
    (plain, annular)
}

fn entries<K: Ord + Copy>(
    cover: &BTreeMap<K, usize>,
    quotient: &BTreeMap<K, usize>,
    f: impl Fn(K) -> (i32, Option<i32>),
) -> Vec<SmithEntry> {
    let mut keys: Vec<K> = cover.keys().chain(quotient.keys()).copied().collect();
    keys.sort();
    keys.dedup();
    keys.into_iter()
        .map(|key| {
            let (q, k) = f(key);
            SmithEntry {
                q,
                k,
                cover: cover.get(&key).copied().unwrap_or(0),
                quotient: quotient.get(&key).copied().unwrap_or(0),
            }
        })
        .collect()
}

fn check_field(p: u32, field: Option<u32>) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let f = field.unwrap_or(p);
    if f != p {
        return Err(Error::Invalid(format!("the Smith inequality needs coefficients in F{p}, got F{f}")));
    }
    Ok(f)
}

/// Checks the Smith inequality `dim Kh(L̃; F_p) >= dim AKh(L; F_p)` in total
/// and grading by grading, the chain of inequalities through annular
/// homology, and the chain-level identification of the fixed complex.
pub fn smith_verify(pair: &PeriodicPair, odd: bool, opts: &SmithOptions) -> Result<SmithReport> {
    let p = pair.p;
    let f = check_field(p, opts.field)?;
    let ring = Ring::Prime(f);
    let via_even = odd && p == 2;
    let odd_used = odd && !via_even;
    let cx = PeriodicComplexes::new(pair, odd_used, opts.flavor)?;
    let kh = cx.cover.homology(ring)?;
    let akh_cover = cx.cover_annular.homology(ring)?;
    let akh = cx.quotient_annular.homology(ring)?;
    let kh_quotient = cx.quotient.homology(ring)?;
    let fixed = fixed_subcomplex(pair, cx.cover.theory, cx.cover_eps.as_ref(), LiftOrder::Ascending)?;
    let fixed_total = homology(&fixed.complex, ring)?.total_rank();
    let chain_mismatches = fixed.compare(&cx.quotient_annular).len();

    let (qplain, qann) = quotient_by_cover_grading(&akh, p);
    let cplain: BTreeMap<i32, usize> = kh.by_quantum().into_iter().map(|((q, _), r)| (q, r)).collect();
    let cann = akh_cover.by_quantum();
    let refined = entries(&cplain, &qplain, |q| (q, None));
    let annular_refined = entries(&cann, &qann, |(q, k)| (q, Some(k)));
    let cover_total = kh.total_rank();
    let cover_annular_total = akh_cover.total_rank();
    let quotient_total = akh.total_rank();
    let quotient_plain_total = kh_quotient.total_rank();
    let chain = [
        cover_annular_total >= cover_total,
        cover_total >= quotient_total,
        quotient_total >= quotient_plain_total,
    ];
    let tate = if opts.tate {
        Some(tate_verify(pair, odd_used, opts.flavor, opts.window)?.holds)
    } else {
        None
    };
    let holds = chain.iter().all(|&b| b)
        && refined.iter().all(SmithEntry::holds)
        && annular_refined.iter().all(SmithEntry::holds)
        && fixed_total == quotient_total
        && chain_mismatches == 0
        && tate != Some(false);
    Ok(SmithReport {
        p,
        theory: if odd { "odd" } else { "even" }.into(),
        field: ring.to_string(),
        via_even,
        cover_total,
        cover_annular_total,
        quotient_total,
        quotient_plain_total,
        chain,
        fixed_total,
        chain_mismatches,
        refined,
        annular_refined,
        tate,
        holds,
    })
}

impl SmithReport {
    /// Plain-text summary, one inequality per line.
    pub fn render(&self) -> String {
        let verdict = |b: bool| if b { "PASS" } else { "FAIL" };
        let mut s = String::new();
        s.push_str(&format!("p = {}, {} theory over {}\n", self.p, self.theory, self.field));
        if self.via_even {
            s.push_str("odd homology over F2 computed through the even functor\n");
        }
        s.push_str(&format!(
            "dim AKh(cover) = {}  >=  dim Kh(cover) = {}  >=  dim AKh(quotient) = {}  >=  dim Kh(quotient) = {}\n",
            self.cover_annular_total, self.cover_total, self.quotient_total, self.quotient_plain_total
        ));
        s.push_str(&format!("chain of inequalities: {}\n", verdict(self.chain.iter().all(|&b| b))));
        s.push_str(&format!(
            "fixed complex: dim H = {}, {} mismatched entries\n",
            self.fixed_total, self.chain_mismatches
        ));
        s.push_str("q      k      cover  quotient\n");
        for e in &self.annular_refined {
            s.push_str(&format!(
                "{:<6} {:<6} {:<6} {:<6} {}\n",
                e.q,
                e.k.unwrap_or(0),
                e.cover,
                e.quotient,
                verdict(e.holds())
            ));
        }
        if let Some(t) = self.tate {
            s.push_str(&format!("tate: {}\n", verdict(t)));
        }
        s.push_str(&format!("smith: {}\n", verdict(self.holds)));
        s
    }
}

/// Tate homology of the annular cover against the annular quotient.
#[derive(Clone, Debug, Serialize)]
pub struct TateReport {
    pub p: u32,
    pub theory: String,
    pub summands: Vec<TateComparison>,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TateComparison {
    #[serde(flatten)]
    pub tate: TateSummand,
    /// `Σ_h dim AKh^{h,j,k}` of the quotient with `q = p j - (p - 1) k`.
    pub expected: usize,
    pub stable: bool,
    pub matches: bool,
}

pub fn tate_verify(pair: &PeriodicPair, odd: bool, flavor: Flavor, window: Option<i32>) -> Result<TateReport> {
    let p = pair.p;
    check_field(p, None)?;
    if odd && p == 2 {
        return Err(Error::EvenPeriod);
    }
    let cx = PeriodicComplexes::new(pair, odd, flavor)?;
    let act = ChainAction::new(pair, odd);
    let sp = SignedPermutation {
        p,
        image: &act.image,
        sign: &act.sign,
    };
    let tate = tate_homology(&cx.cover_annular.complex, sp, window)?;
    let akh = cx.quotient_annular.homology(Ring::Prime(p))?;
    let (_, expected) = quotient_by_cover_grading(&akh, p);
    let mut summands: Vec<TateComparison> = tate
        .into_iter()
        .map(|t| {
            let e = expected.get(&(t.q, t.k)).copied().unwrap_or(0);
            let stable = t.is_stable();
            let matches = t.window.values().all(|&d| d == e);
            TateComparison {
                tate: t,
                expected: e,
                stable,
                matches,
            }
        })
        .collect();
    // quotient summands with no generators upstairs would be a failure too
    for (&(q, k), &e) in &expected {
        if !summands.iter().any(|s| s.tate.q == q && s.tate.k == k) {
            summands.push(TateComparison {
                tate: TateSummand {
                    q,
                    k,
                    window: BTreeMap::new(),
                    wider: BTreeMap::new(),
                },
                expected: e,
                stable: true,
                matches: false,
            });
        }
    }
    let holds = summands.iter().all(|s| s.stable && s.matches);
    Ok(TateReport {
        p,
        theory: if odd { "odd" } else { "even" }.into(),
        summands,
        holds,
    })
}
