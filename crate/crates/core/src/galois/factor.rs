//! Complete factorization of univariate polynomials over small finite
//! fields: squarefree decomposition (characteristic p aware), distinct
//! degree splitting, and Cantor-Zassenhaus equal-degree splitting for odd q.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::upoly::UPoly;
use crate::error::{Error, Result};

/// Factor f into monic irreducibles with multiplicities; the product of
/// the factors times f's leading coefficient reconstructs f exactly. The
/// internal splitting is randomized but seeded from f, so the output is
/// deterministic, and it is sorted as a canonical multiset.
pub fn factor_ff(f: &UPoly) -> Result<Vec<(UPoly, usize)>> {
    if f.is_zero() {
        return Err(Error::InvalidArgument("cannot factor the zero polynomial".into()));
    }
    if f.degree() == 0 {
        return Ok(Vec::new());
    }
    let monic = f.make_monic();
    let mut out = Vec::new();
    for (g, mult) in squarefree_decomposition(&monic)? {
        for (d, prod) in distinct_degree_split(&g)? {
            for irr in equal_degree_split(&prod, d)? {
                out.push((irr, mult));
            }
        }
    }
    out.sort_by(|a, b| {
        (a.0.degree(), coeff_key(&a.0), a.1).cmp(&(b.0.degree(), coeff_key(&b.0), b.1))
    });
    Ok(out)
}

fn coeff_key(f: &UPoly) -> Vec<u64> {
    f.coeffs().iter().map(|c| c.index()).collect()
}

/// p-th root of a polynomial all of whose exponents are multiples of p:
/// X^(pk) -> X^k with coefficients sent through the inverse Frobenius.
fn pth_root(f: &UPoly) -> UPoly {
    let ctx = f.ctx();
    let p = ctx.p() as usize;
    let mut out = Vec::new();
    for (i, c) in f.coeffs().iter().enumerate() {
        if i % p == 0 {
            // c^(p^(n-1)) inverts x -> x^p on F_(p^n)
            out.push(c.frobenius_p(ctx.m() - 1));
        } else {
            debug_assert!(c.is_zero(), "pth_root on polynomial not in F[X^p]");
        }
    }
    UPoly::new(ctx, out)
}

/// Squarefree decomposition of a monic polynomial in characteristic p.
fn squarefree_decomposition(f: &UPoly) -> Result<Vec<(UPoly, usize)>> {
    let p = f.ctx().p() as usize;
    let mut result: Vec<(UPoly, usize)> = Vec::new();
    let fp = f.derivative();
    if fp.is_zero() {
        // f = g(X^p) = (pth_root g)^p
        let root = pth_root(f);
        for (g, m) in squarefree_decomposition(&root)? {
            result.push((g, m * p));
        }
        return Ok(result);
    }
    let mut c = f.gcd(&fp);
    let mut w = f.div_exact(&c)?;
    let mut i = 1usize;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.div_exact(&y)?;
        if !z.is_one() {
            result.push((z, i));
        }
        w = y;
        c = c.div_exact(&w)?;
        i += 1;
    }
    if !c.is_one() {
        let root = pth_root(&c);
        for (g, m) in squarefree_decomposition(&root)? {
            result.push((g, m * p));
        }
    }
    Ok(result)
}

/// Split a monic squarefree polynomial into (degree d, product of all
/// irreducible factors of degree d) pairs.
fn distinct_degree_split(f: &UPoly) -> Result<Vec<(usize, UPoly)>> {
    let ctx = f.ctx();
    let q = ctx.q();
    let x = UPoly::gen(ctx);
    let mut res = Vec::new();
    let mut g = f.clone();
    let mut h = x.rem(&g)?;
    let mut d = 0usize;
    while g.degree() >= 2 * (d as i64 + 1) {
        d += 1;
        h = h.pow_mod(q as u128, &g)?;
        let gd = g.gcd(&h.sub(&x));
        if gd.degree() > 0 {
            res.push((d, gd.clone()));
            g = g.div_exact(&gd)?;
            h = h.rem(&g)?;
        }
    }
    if g.degree() > 0 {
        res.push((g.degree() as usize, g));
    }
    Ok(res)
}

/// Cantor-Zassenhaus equal-degree splitting for odd field size.
fn equal_degree_split(f: &UPoly, d: usize) -> Result<Vec<UPoly>> {
    let ctx = f.ctx();
    let n = f.degree() as usize;
    if n == d {
        return Ok(vec![f.clone()]);
    }
    // (q^d - 1)/2 must fit the pow_mod exponent
    let q = ctx.q() as u128;
    let bits = (128 - q.leading_zeros()) as usize * d;
    if bits > 126 {
        return Err(Error::Oversize(format!("splitting exponent q^{d} too large")));
    }
    let exp = (q.pow(d as u32) - 1) / 2;
    // deterministic per input: seed the splitting randomness from f
    let mut seed = 0xd51f_e1d5_0000_0000u64 ^ (n as u64);
    for c in f.coeffs() {
        seed = seed.wrapping_mul(0x100000001b3).wrapping_add(c.index());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stack = vec![f.clone()];
    let mut done = Vec::new();
    while let Some(cur) = stack.pop() {
        if cur.degree() as usize == d {
            done.push(cur);
            continue;
        }
        loop {
            let deg = cur.degree() as usize;
            let a = UPoly::new(
                ctx,
                (0..deg).map(|_| ctx.element(rng.random_range(0..ctx.q()))).collect(),
            );
            if a.degree() < 1 {
                continue;
            }
            let g = cur.gcd(&a);
            if g.degree() > 0 && g.degree() < cur.degree() {
                stack.push(g.clone());
                stack.push(cur.div_exact(&g)?);
                break;
            }
            let b = a.pow_mod(exp, &cur)?;
            let g = cur.gcd(&b.sub(&UPoly::one(ctx)));
            if g.degree() > 0 && g.degree() < cur.degree() {
                stack.push(g.clone());
                stack.push(cur.div_exact(&g)?);
                break;
            }
        }
    }
    Ok(done)
}
