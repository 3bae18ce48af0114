//! Univariate polynomials over F_q: the ring A = F_q[T].
//!
//! Coefficients ascend in degree with no trailing zeros; the empty list is
//! the zero polynomial.

use std::fmt;
use std::sync::Arc;

use crate::algebra::field::{FieldCtx, FqElem};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct UPoly {
    ctx: Arc<FieldCtx>,
    coeffs: Vec<FqElem>,
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UPoly({self})")
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_with_var("T"))
    }
}

impl UPoly {
    pub fn new(ctx: &Arc<FieldCtx>, mut coeffs: Vec<FqElem>) -> Self {
        while coeffs.last().map_or(false, FqElem::is_zero) {
            coeffs.pop();
        }
        UPoly { ctx: Arc::clone(ctx), coeffs }
    }

    pub fn zero(ctx: &Arc<FieldCtx>) -> Self {
        UPoly { ctx: Arc::clone(ctx), coeffs: Vec::new() }
    }

    pub fn one(ctx: &Arc<FieldCtx>) -> Self {
        UPoly { ctx: Arc::clone(ctx), coeffs: vec![ctx.one()] }
    }

    pub fn constant(c: FqElem) -> Self {
        let ctx = Arc::clone(c.ctx());
        UPoly::new(&ctx, vec![c])
    }

    /// The polynomial T.
    pub fn gen(ctx: &Arc<FieldCtx>) -> Self {
        UPoly { ctx: Arc::clone(ctx), coeffs: vec![ctx.zero(), ctx.one()] }
    }

    /// c * T^k
    pub fn monomial(c: FqElem, k: usize) -> Self {
        if c.is_zero() {
            return UPoly::zero(c.ctx());
        }
        let ctx = Arc::clone(c.ctx());
        let mut coeffs = vec![ctx.zero(); k];
        coeffs.push(c);
        UPoly { ctx, coeffs }
    }

    /// Build from small signed integers (convenience, mainly for tests).
    pub fn from_ints(ctx: &Arc<FieldCtx>, ints: &[i64]) -> Self {
        UPoly::new(ctx, ints.iter().map(|&n| ctx.from_i64(n)).collect())
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FqElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.ctx.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; -1 for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn leading(&self) -> FqElem {
        self.coeffs.last().cloned().unwrap_or_else(|| self.ctx.zero())
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map_or(false, FqElem::is_one)
    }

    fn check_ctx(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx,
            "UPoly operands from different field contexts"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_ctx(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).add(&other.coeff(i)));
        }
        UPoly::new(&self.ctx, out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_ctx(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).sub(&other.coeff(i)));
        }
        UPoly::new(&self.ctx, out)
    }

    pub fn neg(&self) -> Self {
        UPoly { ctx: Arc::clone(&self.ctx), coeffs: self.coeffs.iter().map(FqElem::neg).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_ctx(other);
        if self.is_zero() || other.is_zero() {
            return UPoly::zero(&self.ctx);
        }
        let mut out = vec![self.ctx.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        UPoly::new(&self.ctx, out)
    }

    pub fn scale(&self, c: &FqElem) -> Self {
        if c.is_zero() {
            return UPoly::zero(&self.ctx);
        }
        UPoly::new(&self.ctx, self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Euclidean division: self = q * div + r with deg r < deg div.
    pub fn divmod(&self, div: &Self) -> Result<(Self, Self)> {
        self.check_ctx(div);
        if div.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.degree() < div.degree() {
            return Ok((UPoly::zero(&self.ctx), self.clone()));
        }
        let lead_inv = div.leading().inv()?;
        let dd = div.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        let mut quo = vec![self.ctx.zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let c = rem[i].mul(&lead_inv);
            for (j, d) in div.coeffs.iter().enumerate() {
                let t = c.mul(d);
                rem[i - dd + j] = rem[i - dd + j].sub(&t);
            }
            quo[i - dd] = c;
        }
        Ok((UPoly::new(&self.ctx, quo), UPoly::new(&self.ctx, rem)))
    }

    pub fn rem(&self, div: &Self) -> Result<Self> {
        Ok(self.divmod(div)?.1)
    }

    /// Exact division; errors if the remainder is nonzero.
    pub fn div_exact(&self, div: &Self) -> Result<Self> {
        let (q, r) = self.divmod(div)?;
        if !r.is_zero() {
            return Err(Error::InvalidArgument(format!("{self} is not divisible by {div}")));
        }
        Ok(q)
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Self) -> Self {
        self.check_ctx(other);
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.make_monic()
    }

    pub fn make_monic(&self) -> Self {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(&self.leading().inv().expect("nonzero leading coefficient"))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut result = UPoly::one(&self.ctx);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        result
    }

    pub fn pow_mod(&self, e: u128, m: &Self) -> Result<Self> {
        if m.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut result = UPoly::one(&self.ctx).rem(m)?;
        let mut b = self.rem(m)?;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&b).rem(m)?;
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b).rem(m)?;
            }
        }
        Ok(result)
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        let mut out = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            out.push(c.mul(&self.ctx.from_u64(i as u64)));
        }
        UPoly::new(&self.ctx, out)
    }

    /// Evaluate at a point of the coefficient field.
    pub fn eval(&self, x: &FqElem) -> FqElem {
        let mut acc = self.ctx.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Substitute T -> g (polynomial composition).
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = UPoly::zero(&self.ctx);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&UPoly::constant(c.clone()));
        }
        acc
    }

    /// x^(q^k) mod self, by iterating the q-power map.
    fn frob_power_mod(&self, k: usize) -> Result<Self> {
        let x = UPoly::gen(&self.ctx);
        let q = self.ctx.q();
        let mut acc = x.rem(self)?;
        for _ in 0..k {
            acc = acc.pow_mod(q as u128, self)?;
        }
        Ok(acc)
    }

    /// Deterministic irreducibility test over F_q: f of degree d is
    /// irreducible iff T^(q^d) = T mod f and gcd(T^(q^(d/l)) - T, f) = 1
    /// for every prime l | d. Constants are not irreducible by convention.
    pub fn is_irreducible(&self) -> bool {
        let d = self.degree();
        if d < 1 {
            return false;
        }
        if d == 1 {
            return true;
        }
        let d = d as usize;
        let x = UPoly::gen(&self.ctx);
        let top = self.frob_power_mod(d).expect("nonzero modulus");
        if top != x.rem(self).expect("nonzero modulus") {
            return false;
        }
        let mut n = d;
        let mut primes = Vec::new();
        let mut p = 2;
        while p * p <= n {
            if n % p == 0 {
                primes.push(p);
                while n % p == 0 {
                    n /= p;
                }
            }
            p += 1;
        }
        if n > 1 {
            primes.push(n);
        }
        for l in primes {
            let g = self.frob_power_mod(d / l).expect("nonzero modulus").sub(&x);
            if self.gcd(&g).degree() != 0 {
                return false;
            }
        }
        true
    }

    /// Render with a chosen variable name, compact form: `2T^3+T+1`.
    pub fn to_string_with_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            let body = match i {
                0 => cs,
                1 if c.is_one() => var.to_string(),
                1 => format!("{cs}{var}"),
                _ if c.is_one() => format!("{var}^{i}"),
                _ => format!("{cs}{var}^{i}"),
            };
            parts.push(body);
        }
        parts.join("+")
    }
}
