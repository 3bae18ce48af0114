//! The discriminant of Carlitz torsion polynomials: the resultant of C_p
//! and its X-derivative (which is the constant p), yielding p^(q^d). That
//! identifies K(sqrt(p)) inside the p-th Carlitz cyclotomic field.

use std::sync::Arc;

use crate::algebra::field::FieldCtx;
use crate::algebra::upoly::UPoly;
use crate::drinfeld::carlitz;
use crate::error::{Error, Result};
use crate::ore::additive_to_tx_coeffs;

/// Resultant of two polynomials in X with UPoly coefficients, as the
/// Sylvester determinant with the f-rows first. Computed fraction-free
/// (Bareiss), so all intermediate divisions are exact in F_q[T].
pub fn resultant(f: &[UPoly], g: &[UPoly]) -> Result<UPoly> {
    let ctx = f
        .first()
        .or_else(|| g.first())
        .map(|c| Arc::clone(c.ctx()))
        .ok_or_else(|| Error::InvalidArgument("resultant of empty polynomials".into()))?;
    let deg = |p: &[UPoly]| -> Option<usize> {
        let mut d = None;
        for (i, c) in p.iter().enumerate() {
            if !c.is_zero() {
                d = Some(i);
            }
        }
        d
    };
    let (n, m) = match (deg(f), deg(g)) {
        (Some(n), Some(m)) => (n, m),
        _ => return Err(Error::InvalidArgument("resultant of the zero polynomial".into())),
    };
    if n == 0 && m == 0 {
        return Ok(UPoly::one(&ctx));
    }
    let size = n + m;
    // row i < m: coefficients of f, descending, shifted right by i
    // row m + i < m + n: same for g
    let mut mat = vec![vec![UPoly::zero(&ctx); size]; size];
    for i in 0..m {
        for k in 0..=n {
            mat[i][i + k] = f[n - k].clone();
        }
    }
    for i in 0..n {
        for k in 0..=m {
            mat[m + i][i + k] = g[m - k].clone();
        }
    }
    bareiss_det(mat, &ctx)
}

/// Fraction-free determinant over the integral domain F_q[T].
fn bareiss_det(mut mat: Vec<Vec<UPoly>>, ctx: &Arc<FieldCtx>) -> Result<UPoly> {
    let n = mat.len();
    if n == 0 {
        return Ok(UPoly::one(ctx));
    }
    let mut sign = 1i32;
    let mut prev = UPoly::one(ctx);
    for k in 0..n - 1 {
        if mat[k][k].is_zero() {
            let pivot = (k + 1..n).find(|&i| !mat[i][k].is_zero());
            match pivot {
                Some(i) => {
                    mat.swap(k, i);
                    sign = -sign;
                }
                None => return Ok(UPoly::zero(ctx)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = mat[i][j].mul(&mat[k][k]).sub(&mat[i][k].mul(&mat[k][j]));
                mat[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            mat[i][k] = UPoly::zero(ctx);
        }
        prev = mat[k][k].clone();
    }
    let mut det = mat[n - 1][n - 1].clone();
    if sign < 0 {
        det = det.neg();
    }
    Ok(det)
}

/// The discriminant of the Carlitz p-torsion polynomial for a monic
/// irreducible p of degree d: Res(C_p, C_p') with C_p' = p, equal to
/// p^(q^d) up to the documented sign convention (f-rows first).
pub fn carlitz_disc(p: &UPoly) -> Result<UPoly> {
    if !p.is_monic() {
        return Err(Error::NotMonic(p.to_string()));
    }
    if !p.is_irreducible() {
        return Err(Error::NotIrreducible(p.to_string()));
    }
    let ctx = Arc::clone(p.ctx());
    let cp = carlitz(&ctx, p);
    let coeffs = additive_to_tx_coeffs(&cp)?;
    let deg = coeffs.last().map(|(d, _)| *d).unwrap();
    if deg > 1 << 12 {
        return Err(Error::Oversize(format!("Carlitz torsion polynomial of degree {deg}")));
    }
    let mut f = vec![UPoly::zero(&ctx); deg as usize + 1];
    for (d, c) in coeffs {
        f[d as usize] = c;
    }
    // d/dX of sum c_i X^(q^i) is the linear coefficient, the constant p
    let fprime = vec![p.clone()];
    resultant(&f, &fprime)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Arc<FieldCtx> {
        FieldCtx::new(3, 1).unwrap()
    }

    #[test]
    fn resultant_small_cases() {
        let ctx = f3();
        let t = UPoly::gen(&ctx);
        let one = UPoly::one(&ctx);
        // Res(X^2 - T, X - 1) = 1 - T
        let f = vec![t.neg(), UPoly::zero(&ctx), one.clone()];
        let g = vec![one.neg(), one.clone()];
        assert_eq!(resultant(&f, &g).unwrap(), UPoly::from_ints(&ctx, &[1, -1]));
        // Res(f, constant c) = c^deg f
        let c = UPoly::from_ints(&ctx, &[0, 1]); // T
        let f2 = vec![t.clone(), UPoly::zero(&ctx), UPoly::zero(&ctx), one.clone()];
        assert_eq!(resultant(&f2, &[c]).unwrap(), UPoly::from_ints(&ctx, &[0, 0, 0, 1]));
        // swapping arguments flips by (-1)^(nm)
        let r1 = resultant(&f, &g).unwrap();
        let r2 = resultant(&g, &f).unwrap();
        assert_eq!(r1, r2); // here n*m = 2 even
    }

    #[test]
    fn disc_of_linear_prime() {
        // Res(T X + X^3, T) = T^3
        let ctx = f3();
        let t = UPoly::gen(&ctx);
        let d = carlitz_disc(&t).unwrap();
        assert_eq!(d, UPoly::from_ints(&ctx, &[0, 0, 0, 1]));
    }

    #[test]
    fn disc_of_quadratic_prime() {
        // p = T^2+1: disc = p^(q^d) = p^9 up to sign
        let ctx = f3();
        let p = UPoly::from_ints(&ctx, &[1, 0, 1]);
        let d = carlitz_disc(&p).unwrap();
        let expect = p.pow(9);
        assert!(d == expect || d == expect.neg());
        // q^d odd means K(sqrt(disc)) = K(sqrt(p)): the exponent is odd
        assert_eq!(d.degree() % 2, 0); // deg p^9 = 18; sanity on shape
        assert_eq!(d.degree(), 18);
    }

    #[test]
    fn disc_rejects_bad_input() {
        let ctx = f3();
        assert!(carlitz_disc(&UPoly::from_ints(&ctx, &[2, 0, 1])).is_err()); // reducible
        assert!(carlitz_disc(&UPoly::from_ints(&ctx, &[1, 0, 2])).is_err()); // not monic
    }
}
