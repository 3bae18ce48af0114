//! Quadratic characters, function-field reciprocity, and prime search with
//! a prescribed constant term.

use std::sync::Arc;

use crate::algebra::field::{FieldCtx, FqElem};
use crate::algebra::upoly::UPoly;
use crate::error::{Error, Result};

/// The quadratic character [a/p] in {+1, -1, 0}: zero if p | a, otherwise
/// a^((q^d - 1)/2) mod p read as an element of {±1} in F_q^*.
pub fn quadratic_character(a: &UPoly, p: &UPoly) -> Result<i32> {
    if !p.is_monic() {
        return Err(Error::NotMonic(p.to_string()));
    }
    if !p.is_irreducible() {
        return Err(Error::NotIrreducible(p.to_string()));
    }
    let a = a.rem(p)?;
    if a.is_zero() {
        return Ok(0);
    }
    let q = a.ctx().q() as u128;
    let d = p.degree() as u32;
    let e = (q.pow(d) - 1) / 2;
    let v = a.pow_mod(e, p)?;
    let ctx = a.ctx();
    if v.is_one() {
        Ok(1)
    } else if v == UPoly::constant(ctx.from_i64(-1)) {
        Ok(-1)
    } else {
        // v^2 = 1 in the residue field forces v = ±1
        unreachable!("quadratic character landed outside {{±1}}")
    }
}

/// The sign (-1)^(((q-1)/2) deg P deg Q) appearing in function-field
/// quadratic reciprocity: [P/Q][Q/P] equals this for distinct monic
/// irreducible P, Q.
pub fn reciprocity_sign(p: &UPoly, q: &UPoly) -> Result<i32> {
    if !p.is_monic() || !q.is_monic() {
        return Err(Error::NotMonic(format!("{p}, {q}")));
    }
    if p == q {
        return Err(Error::InvalidArgument("reciprocity needs distinct primes".into()));
    }
    if !p.is_irreducible() || !q.is_irreducible() {
        return Err(Error::NotIrreducible(format!("{p} or {q}")));
    }
    let qq = p.ctx().q();
    let exp = ((qq - 1) / 2) * p.degree() as u64 * q.degree() as u64;
    Ok(if exp % 2 == 0 { 1 } else { -1 })
}

/// Iterate all monic degree-d polynomials with fixed constant term, in
/// ascending lexicographic order on the middle coefficients (a_1 first,
/// then a_2, ...).
fn monic_with_constant(
    ctx: &Arc<FieldCtx>,
    d: usize,
    xi: &FqElem,
) -> impl Iterator<Item = UPoly> {
    let q = ctx.q();
    let middle = d.saturating_sub(1);
    let total = q.checked_pow(middle as u32).expect("enumeration domain fits u64");
    let ctx = Arc::clone(ctx);
    let xi = xi.clone();
    (0..total).map(move |n| {
        let mut coeffs = Vec::with_capacity(d + 1);
        coeffs.push(xi.clone());
        // digit for a_1 is the most significant so that the order is
        // lexicographic in (a_1, a_2, ...)
        let mut k = n;
        let mut digits = vec![0u64; middle];
        for i in (0..middle).rev() {
            digits[i] = k % q;
            k /= q;
        }
        for &dg in &digits {
            coeffs.push(ctx.element(dg));
        }
        coeffs.push(ctx.one());
        UPoly::new(&ctx, coeffs)
    })
}

/// First monic irreducible of degree d with constant term xi, in the
/// deterministic order above. Existence is a theorem of Hansen and Mullen,
/// so exhaustion signals an arithmetic bug.
pub fn hansen_mullen_search(ctx: &Arc<FieldCtx>, d: usize, xi: &FqElem) -> Result<UPoly> {
    if d == 0 {
        return Err(Error::InvalidArgument("degree must be >= 1".into()));
    }
    if xi.is_zero() {
        return Err(Error::InvalidArgument("constant term must be nonzero".into()));
    }
    if (d as u32) >= 32 || ctx.q().checked_pow(d as u32 - 1).is_none() {
        return Err(Error::Oversize(format!("degree {d} search domain")));
    }
    for f in monic_with_constant(ctx, d, xi) {
        if f.is_irreducible() {
            return Ok(f);
        }
    }
    Err(Error::InvalidArgument(format!(
        "no irreducible of degree {d} with constant term {xi}: arithmetic bug"
    )))
}

/// First monic irreducible p of degree d with [zeta*T / p] = sign, scanning
/// constant terms in index order and candidates in Hansen-Mullen order.
pub fn choose_prime(ctx: &Arc<FieldCtx>, d: usize, zeta: &FqElem, sign: i32) -> Result<UPoly> {
    if d < 2 {
        return Err(Error::InvalidArgument("prime search needs degree > 1".into()));
    }
    if zeta.is_zero() {
        return Err(Error::InvalidArgument("zeta must lie in F_q^*".into()));
    }
    if sign != 1 && sign != -1 {
        return Err(Error::InvalidArgument("sign must be ±1".into()));
    }
    let zt = UPoly::gen(ctx).scale(zeta);
    for xi_idx in 1..ctx.q() {
        let xi = ctx.element(xi_idx);
        for f in monic_with_constant(ctx, d, &xi) {
            if f.is_irreducible() && quadratic_character(&zt, &f)? == sign {
                return Ok(f);
            }
        }
    }
    Err(Error::InvalidArgument(format!(
        "no degree-{d} prime with [zeta*T/p] = {sign}: arithmetic bug"
    )))
}
