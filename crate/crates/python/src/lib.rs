//! Python bindings: the main operations of the engine with polynomials
//! passed as strings (`"T^2+1"`, coefficients as integers mod p, or
//! `[c0,c1]` vectors for extension fields).
//!
//! Build the cdylib with `cargo build -p drinfeld-forge-py --release`;
//! `python/smoke_test.py` locates and loads it.

use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use drinfeld_forge::algebra::field::FieldCtx;
use drinfeld_forge::algebra::ratfn::RatFn;
use drinfeld_forge::algebra::upoly::UPoly;
use drinfeld_forge::algebra::{
    choose_prime as choose_prime_rs, hansen_mullen_search as hm_search_rs,
    quadratic_character as qchar_rs, reciprocity_sign as recip_rs,
};
use drinfeld_forge::artifact;
use drinfeld_forge::cover::{cover_pipeline, verify_descent, CoverPoly};
use drinfeld_forge::drinfeld::{
    atkin_lehner as al_rs, carlitz as carlitz_rs, carlitz_disc as disc_rs,
    motive_det_zeta as zeta_rs, DrinfeldModule, FlagPoint,
};
use drinfeld_forge::error::Error;
use drinfeld_forge::galois::{chebotarev_report, factor_ff, psl_oracle};
use drinfeld_forge::modforms::{h_prec_cap, RelationDiagnostics};
use drinfeld_forge::ore::RatField;
use drinfeld_forge::parse::{parse_ratfn, parse_upoly};

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn ctx_for(q: u64) -> PyResult<Arc<FieldCtx>> {
    FieldCtx::from_q(q).map_err(err)
}

fn poly(ctx: &Arc<FieldCtx>, s: &str) -> PyResult<UPoly> {
    parse_upoly(ctx, s).map_err(err)
}

fn coords(ctx: &Arc<FieldCtx>, parts: Vec<String>) -> PyResult<Vec<RatFn>> {
    parts.iter().map(|p| parse_ratfn(ctx, p).map_err(err)).collect()
}

/// Polynomial ring arithmetic in F_q[T]: op is one of add, mul, gcd.
#[pyfunction]
fn upoly_arith(q: u64, a: &str, b: &str, op: &str) -> PyResult<String> {
    let ctx = ctx_for(q)?;
    let fa = poly(&ctx, a)?;
    let fb = poly(&ctx, b)?;
    let out = match op {
        "add" => fa.add(&fb),
        "mul" => fa.mul(&fb),
        "gcd" => fa.gcd(&fb),
        _ => return Err(PyValueError::new_err(format!("unknown op {op}"))),
    };
    Ok(out.to_string())
}

/// Euclidean division in F_q[T]: returns (quotient, remainder).
#[pyfunction]
fn upoly_divmod(q: u64, a: &str, b: &str) -> PyResult<(String, String)> {
    let ctx = ctx_for(q)?;
    let (quo, rem) = poly(&ctx, a)?.divmod(&poly(&ctx, b)?).map_err(err)?;
    Ok((quo.to_string(), rem.to_string()))
}

#[pyfunction]
fn is_irreducible(q: u64, f: &str) -> PyResult<bool> {
    let ctx = ctx_for(q)?;
    Ok(poly(&ctx, f)?.is_irreducible())
}

/// The quadratic character [a/p] in {+1, -1, 0}.
#[pyfunction]
fn quadratic_character(q: u64, a: &str, p: &str) -> PyResult<i32> {
    let ctx = ctx_for(q)?;
    qchar_rs(&poly(&ctx, a)?, &poly(&ctx, p)?).map_err(err)
}

#[pyfunction]
fn reciprocity_sign(q: u64, p: &str, r: &str) -> PyResult<i32> {
    let ctx = ctx_for(q)?;
    recip_rs(&poly(&ctx, p)?, &poly(&ctx, r)?).map_err(err)
}

/// First monic irreducible of degree d with the given constant term.
#[pyfunction]
fn hansen_mullen_search(q: u64, d: usize, xi: &str) -> PyResult<String> {
    let ctx = ctx_for(q)?;
    let xi = artifact::fq_from_string(&ctx, xi).map_err(err)?;
    Ok(hm_search_rs(&ctx, d, &xi).map_err(err)?.to_string())
}

/// First monic irreducible prime of degree d with [zeta*T/p] = sign.
#[pyfunction]
fn choose_prime(q: u64, d: usize, zeta: &str, sign: i32) -> PyResult<String> {
    let ctx = ctx_for(q)?;
    let z = artifact::fq_from_string(&ctx, zeta).map_err(err)?;
    Ok(choose_prime_rs(&ctx, d, &z, sign).map_err(err)?.to_string())
}

/// Coefficients of the Carlitz additive polynomial C_a (of X^(q^i)).
#[pyfunction]
fn carlitz_coeffs(q: u64, a: &str) -> PyResult<Vec<String>> {
    let ctx = ctx_for(q)?;
    let add = carlitz_rs(&ctx, &poly(&ctx, a)?);
    Ok(add.coeffs().iter().map(|c| c.to_string()).collect())
}

/// tau-coefficients of phi_a for the Drinfeld module with the given
/// phi_T coefficients g_1..g_r (rational-function strings).
#[pyfunction]
fn phi_coeffs(q: u64, gs: Vec<String>, a: &str) -> PyResult<Vec<String>> {
    let ctx = ctx_for(q)?;
    let kf = RatField::new(&ctx);
    let dm = DrinfeldModule::new(kf, coords(&ctx, gs)?).map_err(err)?;
    let w = dm.phi_a(&poly(&ctx, a)?);
    Ok(w.coeffs().iter().map(|c| c.to_string()).collect())
}

/// The Atkin-Lehner involution on projective flag coordinates.
#[pyfunction]
fn atkin_lehner(q: u64, point: Vec<String>) -> PyResult<Vec<String>> {
    let ctx = ctx_for(q)?;
    let kf = RatField::new(&ctx);
    let pt = FlagPoint::new(kf, coords(&ctx, point)?).map_err(err)?;
    let image = al_rs(&pt).map_err(err)?;
    Ok(image.coords().iter().map(|c| c.to_string()).collect())
}

/// The normalized motive determinant constant at a moduli point.
#[pyfunction]
fn motive_det_zeta(q: u64, point: Vec<String>) -> PyResult<String> {
    let ctx = ctx_for(q)?;
    let kf = RatField::new(&ctx);
    let pt = FlagPoint::new(kf, coords(&ctx, point)?).map_err(err)?;
    Ok(zeta_rs(&pt).map_err(err)?.to_string())
}

/// The Carlitz discriminant p^(q^deg p) (up to the documented sign).
#[pyfunction]
fn carlitz_disc(q: u64, p: &str) -> PyResult<String> {
    let ctx = ctx_for(q)?;
    Ok(disc_rs(&poly(&ctx, p)?).map_err(err)?.to_string())
}

/// Factor a univariate polynomial over F_q into monic irreducibles;
/// returns (factor, multiplicity) pairs.
#[pyfunction]
fn factor(q: u64, f: &str) -> PyResult<Vec<(String, usize)>> {
    let ctx = ctx_for(q)?;
    let fs = factor_ff(&poly(&ctx, f)?).map_err(err)?;
    Ok(fs.into_iter().map(|(g, m)| (g.to_string(), m)).collect())
}

/// Cycle types of PSL(2, q_inner) on the projective line with exact
/// element counts, keyed by the type string.
#[pyfunction]
fn psl_oracle_counts(q_inner: u64) -> PyResult<std::collections::BTreeMap<String, u64>> {
    let o = psl_oracle(q_inner).map_err(err)?;
    Ok(o.cycle_counts.iter().map(|(t, &c)| (t.to_string(), c)).collect())
}

/// The cover polynomial produced by the whole pipeline.
#[pyclass]
struct Cover {
    cp: CoverPoly,
    n: UPoly,
    prec: i64,
    diagnostics: RelationDiagnostics,
}

#[pymethods]
impl Cover {
    /// Build the cover for a monic irreducible degree-2 prime N with
    /// square constant term, e.g. Cover(3, "T^2+1").
    #[new]
    #[pyo3(signature = (q, n, prec=None))]
    fn new(q: u64, n: &str, prec: Option<i64>) -> PyResult<Self> {
        let ctx = ctx_for(q)?;
        let n = poly(&ctx, n)?;
        let prec = prec.unwrap_or_else(|| h_prec_cap(&ctx));
        let (cp, rel) = cover_pipeline(&ctx, &n, prec).map_err(err)?;
        Ok(Cover { cp, n, prec, diagnostics: rel.diagnostics })
    }

    #[getter]
    fn x_degree(&self) -> u32 {
        self.cp.poly().x_degree()
    }

    #[getter]
    fn y_degree(&self) -> u32 {
        self.cp.poly().y_degree()
    }

    #[getter]
    fn overdetermination(&self) -> usize {
        self.diagnostics.overdetermination
    }

    /// Human-readable polynomial, N kept symbolic unless expand_n.
    #[pyo3(signature = (expand_n=false))]
    fn text(&self, expand_n: bool) -> String {
        artifact::cover_to_text(&self.cp, expand_n)
    }

    /// The JSON artifact (same schema the CLI writes).
    fn to_json(&self) -> String {
        let doc = artifact::cover_to_json(&self.cp, self.prec, &self.diagnostics);
        serde_json::to_string_pretty(&doc).unwrap()
    }

    /// Structural verification checks as (name, passed) pairs.
    fn verify(&self) -> PyResult<Vec<(String, bool)>> {
        Ok(verify_descent(&self.cp).map_err(err)?.checks())
    }

    /// Chebotarev sampling report against the PSL(2, q^2) oracle, as a
    /// JSON string. Deterministic in (trials, seed).
    #[pyo3(signature = (trials=500, seed=1))]
    fn galois_report(&self, trials: u64, seed: u64) -> PyResult<String> {
        let rep = chebotarev_report(self.cp.poly(), &self.n, trials, seed).map_err(err)?;
        Ok(serde_json::to_string_pretty(&artifact::report_to_json(&rep)).unwrap())
    }

    fn __repr__(&self) -> String {
        format!(
            "Cover(q={}, N={}, bidegree=({}, {}))",
            self.cp.q(),
            self.n,
            self.cp.poly().x_degree(),
            self.cp.poly().y_degree()
        )
    }
}

#[pymodule]
fn drinfeld_forge_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_function(wrap_pyfunction!(upoly_arith, m)?)?;
    m.add_function(wrap_pyfunction!(upoly_divmod, m)?)?;
    m.add_function(wrap_pyfunction!(is_irreducible, m)?)?;
    m.add_function(wrap_pyfunction!(quadratic_character, m)?)?;
    m.add_function(wrap_pyfunction!(reciprocity_sign, m)?)?;
    m.add_function(wrap_pyfunction!(hansen_mullen_search, m)?)?;
    m.add_function(wrap_pyfunction!(choose_prime, m)?)?;
    m.add_function(wrap_pyfunction!(carlitz_coeffs, m)?)?;
    m.add_function(wrap_pyfunction!(phi_coeffs, m)?)?;
    m.add_function(wrap_pyfunction!(atkin_lehner, m)?)?;
    m.add_function(wrap_pyfunction!(motive_det_zeta, m)?)?;
    m.add_function(wrap_pyfunction!(carlitz_disc, m)?)?;
    m.add_function(wrap_pyfunction!(factor, m)?)?;
    m.add_function(wrap_pyfunction!(psl_oracle_counts, m)?)?;
    m.add_class::<Cover>()?;
    Ok(())
}
