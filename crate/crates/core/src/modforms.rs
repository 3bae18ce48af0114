//! Drinfeld modular forms as series in the uniformizer s: the form h via
//! its known cusp expansion, t(az), the Hauptmoduln f_T, f_N and f, and the
//! bivariate relation polynomial P with P(f_T, f) = 0.

use std::sync::Arc;

use crate::algebra::field::FieldCtx;
use crate::algebra::ratfn::RatFn;
use crate::algebra::upoly::UPoly;
use crate::bivar::BivarPoly;
use crate::drinfeld::carlitz;
use crate::error::{Error, Result};
use crate::ore::{CoeffField, RatField};
use crate::series::{TPowSeries, TruncSeries};

/// Extra absolute precision given to exact (rational-function) series so
/// they never bind before the h-expansion does.
fn pad(ctx: &Arc<FieldCtx>, prec: i64) -> i64 {
    let q = ctx.q() as i64;
    prec + q * q + q + 5
}

/// Number of coefficients of h/t the known expansion pins down:
/// everything below the O(s^(q^3)) tail.
pub fn h_prec_cap(ctx: &Arc<FieldCtx>) -> i64 {
    let q = ctx.q() as i64;
    q * q * q
}

/// h/t as a series in s, from the expansion
/// h = t(-1/U_1 + s^(q^3-q^2)(1/U_1 - 1/U_1^2) - s^(q^3-1) + O(s^(q^3)))
/// with U_1 = 1 - s^(q-1) + (T^q - T) s^q.
pub fn h_series(ctx: &Arc<FieldCtx>, prec: i64) -> Result<TruncSeries<RatField>> {
    let cap = h_prec_cap(ctx);
    if prec > cap {
        return Err(Error::PrecisionCap { requested: prec, cap });
    }
    if prec < 1 {
        return Err(Error::InvalidArgument("precision must be >= 1".into()));
    }
    let q = ctx.q() as i64;
    let k = RatField::new(ctx);
    let t = RatFn::gen(ctx);
    let tq_minus_t = t.frobenius().sub(&t);
    // U_1 = 1 - s^(q-1) + (T^q - T) s^q
    let mut u1 = TruncSeries::monomial(k.clone(), k.one(), 0, prec);
    u1 = u1.sub(&TruncSeries::monomial(k.clone(), k.one(), q - 1, prec));
    u1 = u1.add(&TruncSeries::monomial(k.clone(), tq_minus_t, q, prec));
    let inv_u1 = u1.inv()?;
    let mut h = inv_u1.neg();
    let middle = inv_u1.sub(&inv_u1.mul(&inv_u1)).shift(q * q * q - q * q);
    h = h.add(&middle.truncate(prec));
    h = h.sub(&TruncSeries::monomial(k.clone(), k.one(), q * q * q - 1, prec));
    Ok(h)
}

/// t(az) = t^|a| / (C_a(1/t) t^|a|) for monic a of degree >= 1, returned
/// as t^(q^deg a) times a unit s-series: the denominator expands as
/// sum c_j s^((q^e - q^j)/(q-1)) over the Carlitz coefficients c_j of a.
pub fn t_of_az(ctx: &Arc<FieldCtx>, a: &UPoly, prec: i64) -> Result<TPowSeries<RatField>> {
    if !a.is_monic() || a.degree() < 1 {
        return Err(Error::NotMonic(format!("{a} (t(az) needs monic a of degree >= 1)")));
    }
    let q = ctx.q() as i64;
    let e = a.degree() as u32;
    let qe = q.checked_pow(e).ok_or_else(|| Error::Oversize(format!("q^{e}")))?;
    let k = RatField::new(ctx);
    let ca = carlitz(ctx, a);
    let mut den = TruncSeries::zero(k.clone(), prec);
    for (j, c) in ca.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let exp = (qe - q.pow(j as u32)) / (q - 1);
        den = den.add(&TruncSeries::monomial(k.clone(), c.clone(), exp, prec));
    }
    Ok(TPowSeries::new(qe, den.inv()?))
}

/// The three Hauptmoduln of the T, N and NT level structures:
/// f_T = h(Tz)/h(z), f_N = (q+1)-th root of h(Nz)/h(z), and
/// f = (q^2-1)-th root of h(NTz)h(z)/(h(Tz)h(Nz)), all normalized s(1+O(s)).
pub struct Hauptmoduls {
    pub f_t: TruncSeries<RatField>,
    pub f_n: TruncSeries<RatField>,
    pub f: TruncSeries<RatField>,
    /// valuation and leading coefficient of the radicand of f, kept for
    /// reporting (expected shape: valuation q^2-1, leading coefficient 1)
    pub radicand_val: i64,
}

pub fn hauptmoduls(ctx: &Arc<FieldCtx>, n: &UPoly, prec: i64) -> Result<Hauptmoduls> {
    let q = ctx.q() as u32;
    let cap = h_prec_cap(ctx);
    if prec > cap {
        return Err(Error::PrecisionCap { requested: prec, cap });
    }
    if !n.is_monic() || n.degree() != 2 || !n.is_irreducible() {
        return Err(Error::InvalidArgument(format!(
            "N = {n} must be monic irreducible of degree 2"
        )));
    }
    let wide = pad(ctx, prec);
    let h = h_series(ctx, prec)?;
    let t_poly = UPoly::gen(ctx);
    let nt = n.mul(&t_poly);

    // h(az) = t(az) * (h/t)(s(az)) with s(az) = t(az)^(q-1)
    let h_of = |a: &UPoly| -> Result<TPowSeries<RatField>> {
        let taz = t_of_az(ctx, a, wide)?;
        let saz = taz.pow(q - 1).into_s_series()?;
        let comp = h.compose(&saz)?;
        Ok(TPowSeries::new(taz.tpow, taz.series.mul(&comp)))
    };
    // h(z) itself: t * (h/t)(s)
    let h_z = TPowSeries::new(1, h.clone());

    let h_t = h_of(&t_poly)?;
    let h_n = h_of(n)?;
    let h_nt = h_of(&nt)?;

    let f_t = h_t.div(&h_z)?.into_s_series()?;
    let f_n_rad = h_n.div(&h_z)?.into_s_series()?;
    let f_n = f_n_rad.nth_root(q + 1)?;
    let rad = h_nt.mul(&h_z).div(&h_t.mul(&h_n))?.into_s_series()?;
    let radicand_val = rad.val();
    if radicand_val != (q as i64) * (q as i64) - 1 {
        return Err(Error::Degenerate(format!(
            "radicand of f has valuation {radicand_val}, expected q^2-1"
        )));
    }
    match rad.leading() {
        Some(c) if c.is_one() => {}
        other => {
            return Err(Error::Degenerate(format!(
                "radicand of f has leading coefficient {other:?}, expected 1"
            )))
        }
    }
    let f = rad.nth_root(q * q - 1)?;

    for (name, s) in [("f_T", &f_t), ("f_N", &f_n), ("f", &f)] {
        if s.val() != 1 || s.leading().map_or(true, |c| !c.is_one()) {
            return Err(Error::Degenerate(format!("{name} is not s(1 + O(s)): {s}")));
        }
    }
    Ok(Hauptmoduls { f_t, f_n, f, radicand_val })
}

/// Diagnostics of the relation solve, for reports and acceptance checks.
#[derive(Debug, Clone)]
pub struct RelationDiagnostics {
    /// unknowns in g (= q^2 + 2)
    pub unknowns: usize,
    /// total equations available (s-coefficients matched)
    pub equations: usize,
    /// equations beyond the unknowns, all verified to hold
    pub overdetermination: usize,
    /// the precision to which P(f_T, f) vanished
    pub residual_prec: i64,
}

pub struct Relation {
    /// P(x, y) = T^(q+1) x^2 y^(q^2) - g(y) x + y with P(f_T, f) = 0
    pub p: BivarPoly<RatField>,
    /// the degree-(q^2+1) polynomial g with
    /// g(f) = T^(q+1) f_T f^(q^2) + f/f_T
    pub g: Vec<RatFn>,
    pub diagnostics: RelationDiagnostics,
}

/// Solve for the invariant combination as a polynomial in f and assemble
/// the relation polynomial. The linear system is triangular with unit
/// diagonal because f = s(1 + O(s)); every spare equation is checked.
pub fn relation_poly(ctx: &Arc<FieldCtx>, n: &UPoly, prec: i64) -> Result<Relation> {
    let nc = n.coeff(0);
    if !nc.is_square() || nc.is_zero() {
        return Err(Error::InvalidArgument(format!(
            "constant term {nc} of N = {n} is not a square in F_q^*"
        )));
    }
    relation_poly_any_n(ctx, n, prec)
}

/// The same solve without the constant-term character condition; the
/// relation and cover exist for every monic irreducible N of degree 2,
/// the character condition only governs which group the cover realizes.
pub fn relation_poly_any_n(ctx: &Arc<FieldCtx>, n: &UPoly, prec: i64) -> Result<Relation> {
    let q = ctx.q() as usize;
    let k = RatField::new(ctx);
    let hm = hauptmoduls(ctx, n, prec)?;
    let (f_t, f) = (&hm.f_t, &hm.f);

    let t = RatFn::gen(ctx);
    let t_q1 = t.pow(ctx.q() as i64 + 1).expect("T is a unit");
    // G = T^(q+1) f_T f^(q^2) + f / f_T
    let g_series = f_t
        .mul(&f.pow((q * q) as u32))
        .scale(&t_q1)
        .add(&f.mul(&f_t.inv()?));

    let deg_g = q * q + 1;
    // powers of f, with f^0 pinned exact
    let mut fpow: Vec<TruncSeries<RatField>> = Vec::with_capacity(deg_g + 1);
    fpow.push(TruncSeries::constant(k.clone(), k.one(), crate::series::PREC_EXACT));
    for j in 1..=deg_g {
        let next = fpow[j - 1].mul(f);
        fpow.push(next);
    }

    let equations = g_series.prec();
    if (equations as usize) < deg_g + 1 {
        return Err(Error::InconsistentSystem(format!(
            "only {equations} s-coefficients available for {} unknowns",
            deg_g + 1
        )));
    }
    // forward substitution: equation j determines g_j since [s^j] f^j = 1
    let mut g_coeffs: Vec<RatFn> = Vec::with_capacity(deg_g + 1);
    for j in 0..=deg_g {
        let mut rhs = g_series.coeff(j as i64).expect("within precision");
        for (c, fp) in g_coeffs.iter().zip(&fpow) {
            if let Some(a) = fp.coeff(j as i64) {
                rhs = rhs.sub(&a.mul(c));
            }
        }
        let diag = fpow[j].coeff(j as i64).expect("within precision");
        if !diag.is_one() {
            return Err(Error::InconsistentSystem(format!(
                "diagonal [s^{j}] f^{j} = {diag} is not 1"
            )));
        }
        g_coeffs.push(rhs);
    }
    // residual of the solve: G - g(f) must vanish to its full precision
    let mut gf = TruncSeries::zero(k.clone(), crate::series::PREC_EXACT);
    for (c, fp) in g_coeffs.iter().zip(&fpow) {
        gf = gf.add(&fp.scale(c));
    }
    let res = g_series.sub(&gf);
    if !res.is_zero_to_prec() {
        return Err(Error::InconsistentSystem(format!(
            "overdetermined equations are inconsistent: residual {res}"
        )));
    }
    let overdetermination = res.prec() as usize - (deg_g + 1);

    // P(x, y) = T^(q+1) x^2 y^(q^2) - g(y) x + y
    let mut p = BivarPoly::zero(k.clone());
    p.add_term(2, (q * q) as u32, t_q1.clone());
    for (j, c) in g_coeffs.iter().enumerate() {
        p.add_term(1, j as u32, c.neg());
    }
    p.add_term(0, 1, k.one());

    // defining postcondition: P(f_T, f) = 0 to working precision
    let residual = p.eval_series(f_t, f)?;
    if !residual.is_zero_to_prec() {
        return Err(Error::InconsistentSystem(format!(
            "P(f_T, f) does not vanish: {residual}"
        )));
    }
    let diagnostics = RelationDiagnostics {
        unknowns: deg_g + 1,
        equations: equations as usize,
        overdetermination,
        residual_prec: residual.prec(),
    };
    Ok(Relation { p, g: g_coeffs, diagnostics })
}
