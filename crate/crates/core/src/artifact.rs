//! JSON artifact schemas for the CLI and bindings: polynomials as arrays
//! of coefficient strings ascending in degree, cover polynomials as sparse
//! monomial maps, and the Galois sampling report.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::field::{FieldCtx, FqElem};
use crate::algebra::ratfn::RatFn;
use crate::algebra::upoly::UPoly;
use crate::bivar::BivarPoly;
use crate::cover::CoverPoly;
use crate::error::{Error, Result};
use crate::galois::ChebotarevReport;
use crate::modforms::RelationDiagnostics;
use crate::ore::RatField;

/// FqElem as a string: the integer for prime fields, `[c0,c1,...]` for
/// proper extensions.
pub fn fq_to_string(c: &FqElem) -> String {
    c.to_string()
}

pub fn fq_from_string(ctx: &Arc<FieldCtx>, s: &str) -> Result<FqElem> {
    let s = s.trim();
    if let Some(body) = s.strip_prefix('[') {
        let body = body.strip_suffix(']').ok_or_else(|| Error::Parse {
            pos: s.len(),
            msg: "unterminated coefficient vector".into(),
        })?;
        let digits: std::result::Result<Vec<u64>, _> =
            body.split(',').map(|d| d.trim().parse::<u64>()).collect();
        let digits = digits.map_err(|_| Error::Parse { pos: 0, msg: format!("bad digits in {s}") })?;
        ctx.from_coeffs(&digits)
    } else {
        let n = s
            .parse::<u64>()
            .map_err(|_| Error::Parse { pos: 0, msg: format!("bad coefficient {s}") })?;
        Ok(ctx.from_u64(n))
    }
}

/// UPoly as a JSON array of coefficient strings, ascending in degree.
pub fn upoly_to_json(p: &UPoly) -> Vec<String> {
    p.coeffs().iter().map(fq_to_string).collect()
}

pub fn upoly_from_json(ctx: &Arc<FieldCtx>, coeffs: &[String]) -> Result<UPoly> {
    let elems: Result<Vec<FqElem>> = coeffs.iter().map(|s| fq_from_string(ctx, s)).collect();
    Ok(UPoly::new(ctx, elems?))
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct ProvenanceJson {
    pub prec: i64,
    pub unknowns: usize,
    pub equations: usize,
    pub overdetermination: usize,
    pub residual_prec: i64,
}

/// The on-disk cover artifact.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct CoverJson {
    pub q: u64,
    #[serde(rename = "N")]
    pub n: String,
    pub x_degree: u32,
    pub y_degree: u32,
    /// "i,j" -> coefficient (a polynomial in T, ascending coefficients)
    pub terms: BTreeMap<String, Vec<String>>,
    pub provenance: ProvenanceJson,
}

pub fn cover_to_json(cp: &CoverPoly, prec: i64, diag: &RelationDiagnostics) -> CoverJson {
    let mut terms = BTreeMap::new();
    for (&(i, j), c) in cp.poly().terms() {
        terms.insert(format!("{i},{j}"), upoly_to_json(c.num()));
    }
    CoverJson {
        q: cp.q(),
        n: cp.n().to_string(),
        x_degree: cp.poly().x_degree(),
        y_degree: cp.poly().y_degree(),
        terms,
        provenance: ProvenanceJson {
            prec,
            unknowns: diag.unknowns,
            equations: diag.equations,
            overdetermination: diag.overdetermination,
            residual_prec: diag.residual_prec,
        },
    }
}

/// Rebuild the bivariate polynomial (plus N) from the artifact.
pub fn cover_from_json(doc: &CoverJson) -> Result<(BivarPoly<RatField>, UPoly)> {
    let ctx = FieldCtx::from_q(doc.q)?;
    let n = crate::parse::parse_upoly(&ctx, &doc.n)?;
    let kf = RatField::new(&ctx);
    let mut poly = BivarPoly::zero(kf);
    for (key, coeffs) in &doc.terms {
        let (i, j) = key
            .split_once(',')
            .and_then(|(a, b)| Some((a.parse::<u32>().ok()?, b.parse::<u32>().ok()?)))
            .ok_or_else(|| Error::Parse { pos: 0, msg: format!("bad monomial key {key}") })?;
        poly.add_term(i, j, RatFn::from_poly(upoly_from_json(&ctx, coeffs)?));
    }
    Ok((poly, n))
}

/// Human-readable rendering of the cover polynomial, keeping N symbolic
/// where a power of N divides the coefficient cleanly; `expand_n` prints
/// raw T-polynomials instead.
pub fn cover_to_text(cp: &CoverPoly, expand_n: bool) -> String {
    let n = cp.n();
    let mut keys: Vec<(u32, u32)> = cp.poly().terms().keys().copied().collect();
    // descending y, then descending x
    keys.sort_by(|a, b| (b.1, b.0).cmp(&(a.1, a.0)));
    let mut out = String::new();
    for (idx, &(i, j)) in keys.iter().enumerate() {
        let c = cp.poly().coeff(i, j);
        let mut poly = c.num().clone();
        let mut body = String::new();
        let mut npow = 0usize;
        if !expand_n {
            while poly.degree() >= n.degree() {
                match poly.div_exact(n) {
                    Ok(q) => {
                        poly = q;
                        npow += 1;
                    }
                    Err(_) => break,
                }
            }
        }
        if idx > 0 {
            out.push_str(" + ");
        }
        let unit = poly.is_one() && (npow > 0 || i > 0 || j > 0);
        if !unit {
            if poly.is_constant() || poly.coeffs().iter().filter(|c| !c.is_zero()).count() == 1 {
                body.push_str(&poly.to_string());
            } else {
                body.push_str(&format!("({poly})"));
            }
        }
        if npow == 1 {
            body.push('N');
        } else if npow > 1 {
            body.push_str(&format!("N^{npow}"));
        }
        if i == 1 {
            body.push('x');
        } else if i > 1 {
            body.push_str(&format!("x^{i}"));
        }
        if j == 1 {
            body.push('y');
        } else if j > 1 {
            body.push_str(&format!("y^{j}"));
        }
        if body.is_empty() {
            body.push('1');
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// The Galois report: observed/oracle counts keyed by cycle
/// type strings, the boolean verdicts, the distance, and bookkeeping.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct ReportJson {
    pub observed: BTreeMap<String, u64>,
    pub oracle: BTreeMap<String, u64>,
    pub containment: bool,
    pub coverage: bool,
    pub identity_observed: bool,
    pub distance: f64,
    pub max_freq_gap: f64,
    pub discarded: u64,
    pub valid: u64,
    pub trials: u64,
    pub seed: u64,
    pub violations: Vec<String>,
    pub group_fit: String,
    pub oracle_label: String,
    pub oracle_order: u64,
}

pub fn report_to_json(rep: &ChebotarevReport) -> ReportJson {
    ReportJson {
        observed: rep.observed.iter().map(|(t, &c)| (t.to_string(), c)).collect(),
        oracle: rep.oracle.cycle_counts.iter().map(|(t, &c)| (t.to_string(), c)).collect(),
        containment: rep.containment,
        coverage: rep.coverage,
        identity_observed: rep.identity_observed,
        distance: rep.distance,
        max_freq_gap: rep.max_freq_gap,
        discarded: rep.discarded,
        valid: rep.valid,
        trials: rep.trials,
        seed: rep.seed,
        violations: rep.violations.iter().map(|t| t.to_string()).collect(),
        group_fit: rep.group_fit.clone(),
        oracle_label: rep.oracle.label.clone(),
        oracle_order: rep.oracle.order,
    }
}
