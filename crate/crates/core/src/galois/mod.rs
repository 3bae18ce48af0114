//! Statistical verification of the Galois group of a cover polynomial:
//! cycle types of Frobenius at random specializations, compared against a
//! brute-force group oracle.

pub mod factor;
pub mod oracle;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::field::{Embedding, FieldCtx};
use crate::algebra::ratfn::RatFn;
use crate::algebra::upoly::UPoly;
use crate::bivar::BivarPoly;
use crate::error::{Error, Result};
use crate::ore::{CoeffField, RatField};

pub use factor::factor_ff;
pub use oracle::{pgl_oracle, psl_oracle, GroupOracle};

/// A multiset of positive cycle lengths summing to the permutation degree,
/// kept sorted ascending.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CycleType(Vec<usize>);

impl CycleType {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable();
        CycleType(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&p| p == 1)
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut i = 0;
        while i < self.0.len() {
            let part = self.0[i];
            let mut count = 0;
            while i < self.0.len() && self.0[i] == part {
                count += 1;
                i += 1;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if count == 1 {
                write!(f, "{part}")?;
            } else {
                write!(f, "{part}^{count}")?;
            }
        }
        Ok(())
    }
}

/// Outcome of the Chebotarev sampling run.
#[derive(Debug, Clone)]
pub struct ChebotarevReport {
    pub observed: BTreeMap<CycleType, u64>,
    pub oracle: GroupOracle,
    /// every observed type is achievable in the oracle group
    pub containment: bool,
    /// every non-identity oracle type was observed (the identity class has
    /// expected frequency 1/|G| and is exempt)
    pub coverage: bool,
    pub identity_observed: bool,
    /// chi-square statistic over the oracle types
    pub distance: f64,
    /// largest |empirical - expected| frequency over all types
    pub max_freq_gap: f64,
    pub discarded: u64,
    pub valid: u64,
    pub trials: u64,
    pub seed: u64,
    pub violations: Vec<CycleType>,
    /// diagnostic only: the smallest enumerated Moebius group whose types
    /// contain every observed type
    pub group_fit: String,
}

impl ChebotarevReport {
    pub fn passes(&self) -> bool {
        self.containment && self.coverage
    }
}

fn thread_budget(trials: u64) -> usize {
    let avail = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    let cap = std::env::var("DRINFELD_FORGE_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or(avail.min(8));
    cap.min(trials.max(1) as usize)
}

/// Specialize the y-polynomial at (x -> x0, T -> t0) inside the field of
/// the embedding. Coefficients must have nonvanishing denominators there
/// (cover coefficients are polynomials, so this never trips for them).
fn specialize_y_poly(
    poly: &BivarPoly<RatField>,
    emb: &Embedding,
    t0: &crate::algebra::field::FqElem,
    x0: &crate::algebra::field::FqElem,
) -> Result<UPoly> {
    let big = emb.to_ctx();
    let ydeg = poly.y_degree() as usize;
    let mut coeffs = vec![big.zero(); ydeg + 1];
    for (&(i, j), c) in poly.terms() {
        let base = c.eval_embedded(emb, t0)?;
        let xpow = x0.pow(i as u64);
        coeffs[j as usize] = coeffs[j as usize].add(&base.mul(&xpow));
    }
    Ok(UPoly::new(big, coeffs))
}

fn derive_trial_seed(seed: u64, index: u64) -> u64 {
    // splitmix64 step keyed by (seed, index)
    let mut z = seed ^ index.wrapping_mul(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Sample `trials` random specializations (x0, t0) over residue fields
/// F_(q^k), k in 1..=4, avoiding T = 0, roots of N, degree drop and
/// non-squarefree samples (those are discarded and counted); factor each
/// specialization in y and record the cycle type of its factor degrees.
/// Deterministic given (seed, trials); trials run concurrently.
pub fn chebotarev_report(
    poly: &BivarPoly<RatField>,
    n_poly: &UPoly,
    trials: u64,
    seed: u64,
) -> Result<ChebotarevReport> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be >= 1".into()));
    }
    let ctx = n_poly.ctx();
    let q = ctx.q();
    let oracle = psl_oracle(q * q)?;
    let ydeg = poly.y_degree() as usize;

    // residue fields and embeddings, shared across trials
    let mut fields = Vec::new();
    for k in 1..=4usize {
        let big = FieldCtx::new(ctx.p(), ctx.m() * k)?;
        let emb = Embedding::new(ctx, &big)?;
        fields.push(Arc::new(emb));
    }
    let fields = Arc::new(fields);

    let run_trial = |index: u64| -> Result<Option<CycleType>> {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_trial_seed(seed, index));
        let emb = &fields[rng.random_range(0..fields.len())];
        let big = emb.to_ctx();
        let size = big.q();
        // nonzero t0 with N(t0) != 0
        let t0 = big.element(rng.random_range(1..size));
        let n_at = RatFn::from_poly(n_poly.clone()).eval_embedded(emb, &t0)?;
        if n_at.is_zero() {
            return Ok(None);
        }
        let x0 = big.element(rng.random_range(0..size));
        let f = specialize_y_poly(poly, emb, &t0, &x0)?;
        if f.degree() as usize != ydeg {
            return Ok(None); // leading coefficient vanished
        }
        let fp = f.derivative();
        if fp.is_zero() || f.gcd(&fp).degree() != 0 {
            return Ok(None); // not squarefree (ramified place)
        }
        let factors = factor_ff(&f)?;
        let mut parts = Vec::new();
        for (g, m) in factors {
            debug_assert_eq!(m, 1);
            for _ in 0..m {
                parts.push(g.degree() as usize);
            }
        }
        Ok(Some(CycleType::new(parts)))
    };

    let nthreads = thread_budget(trials);
    let mut observed: BTreeMap<CycleType, u64> = BTreeMap::new();
    let mut discarded = 0u64;
    if nthreads <= 1 {
        for i in 0..trials {
            match run_trial(i)? {
                Some(t) => *observed.entry(t).or_insert(0) += 1,
                None => discarded += 1,
            }
        }
    } else {
        let chunks: Vec<Vec<u64>> = (0..nthreads as u64)
            .map(|t| (0..trials).filter(|i| i % nthreads as u64 == t).collect())
            .collect();
        let results: Vec<Result<(BTreeMap<CycleType, u64>, u64)>> =
            std::thread::scope(|scope| {
                let handles: Vec<_> = chunks
                    .iter()
                    .map(|chunk: &Vec<u64>| {
                        scope.spawn(move || {
                            let mut local: BTreeMap<CycleType, u64> = BTreeMap::new();
                            let mut disc = 0u64;
                            for &i in chunk {
                                match run_trial(i)? {
                                    Some(t) => *local.entry(t).or_insert(0) += 1,
                                    None => disc += 1,
                                }
                            }
                            Ok((local, disc))
                        })
                    })
                    .collect();
                handles.into_iter().map(|h| h.join().expect("trial thread panicked")).collect()
            });
        for r in results {
            let (local, disc) = r?;
            discarded += disc;
            for (t, c) in local {
                *observed.entry(t).or_insert(0) += c;
            }
        }
    }

    let valid = trials - discarded;
    if valid == 0 {
        return Err(Error::Degenerate("all specializations were degenerate".into()));
    }

    let mut containment = true;
    let mut violations = Vec::new();
    for t in observed.keys() {
        if !oracle.contains(t) {
            containment = false;
            violations.push(t.clone());
        }
    }
    let mut coverage = true;
    let mut identity_observed = false;
    for t in oracle.cycle_counts.keys() {
        if t.is_identity() {
            identity_observed = observed.contains_key(t);
            continue;
        }
        if !observed.contains_key(t) {
            coverage = false;
        }
    }
    let mut distance = 0.0;
    let mut max_freq_gap: f64 = 0.0;
    for (t, _) in oracle.cycle_counts.iter() {
        let exp = oracle.frequency(t) * valid as f64;
        let obs = observed.get(t).copied().unwrap_or(0) as f64;
        if exp > 0.0 {
            distance += (obs - exp) * (obs - exp) / exp;
        }
        max_freq_gap = max_freq_gap.max((obs - exp).abs() / valid as f64);
    }
    for (t, &cnt) in observed.iter() {
        if !oracle.contains(t) {
            max_freq_gap = max_freq_gap.max(cnt as f64 / valid as f64);
        }
    }

    let group_fit = if containment {
        oracle.label.clone()
    } else {
        match pgl_oracle(q * q) {
            Ok(pgl) if observed.keys().all(|t| pgl.contains(t)) => {
                format!("{} (but not PSL)", pgl.label)
            }
            _ => "outside PGL(2,q^2)".to_string(),
        }
    };

    Ok(ChebotarevReport {
        observed,
        oracle,
        containment,
        coverage,
        identity_observed,
        distance,
        max_freq_gap,
        discarded,
        valid,
        trials,
        seed,
        violations,
        group_fit,
    })
}

/// A pseudo-random bivariate polynomial with the same bidegree shape as a
/// cover polynomial, used as a wrong-group control: its specializations
/// should show cycle types outside the oracle set.
pub fn random_control_poly(ctx: &Arc<FieldCtx>, ydeg: u32, seed: u64) -> BivarPoly<RatField> {
    let k = RatField::new(ctx);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut p = BivarPoly::zero(k.clone());
    // monic in y so the degree never drops
    p.add_term(0, ydeg, k.one());
    for j in 0..ydeg {
        for i in 0..=2u32 {
            if rng.random_range(0..3u32) == 0 {
                let c = UPoly::new(
                    ctx,
                    (0..=2).map(|_| ctx.element(rng.random_range(0..ctx.q()))).collect(),
                );
                p.add_term(i, j, RatFn::from_poly(c));
            }
        }
    }
    p
}
