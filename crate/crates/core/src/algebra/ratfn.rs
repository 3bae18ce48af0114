//! The rational function field K = F_q(T).
//!
//! Fractions are kept reduced (gcd 1) with a monic denominator, so equality
//! is plain component equality. The series pipeline in `modforms` only ever
//! produces denominator-one values; arithmetic fast-paths that case so it
//! degenerates to polynomial arithmetic.

use std::fmt;
use std::sync::Arc;

use crate::algebra::field::{FieldCtx, FqElem};
use crate::algebra::upoly::UPoly;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct RatFn {
    num: UPoly,
    den: UPoly,
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFn({self})")
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl RatFn {
    /// Construct and normalize: reduce by the gcd, make the denominator
    /// monic. Errors on a zero denominator.
    pub fn new(num: UPoly, den: UPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFn { den: UPoly::one(num.ctx()), num });
        }
        let (mut num, mut den) = (num, den);
        if !den.is_one() {
            let g = num.gcd(&den);
            if g.degree() > 0 {
                num = num.div_exact(&g).expect("gcd divides");
                den = den.div_exact(&g).expect("gcd divides");
            }
            let lc = den.leading();
            if !lc.is_one() {
                let inv = lc.inv().expect("nonzero leading coefficient");
                num = num.scale(&inv);
                den = den.scale(&inv);
            }
        }
        Ok(RatFn { num, den })
    }

    pub fn from_poly(num: UPoly) -> Self {
        RatFn { den: UPoly::one(num.ctx()), num }
    }

    pub fn zero(ctx: &Arc<FieldCtx>) -> Self {
        RatFn::from_poly(UPoly::zero(ctx))
    }

    pub fn one(ctx: &Arc<FieldCtx>) -> Self {
        RatFn::from_poly(UPoly::one(ctx))
    }

    pub fn constant(c: FqElem) -> Self {
        RatFn::from_poly(UPoly::constant(c))
    }

    /// The rational function T.
    pub fn gen(ctx: &Arc<FieldCtx>) -> Self {
        RatFn::from_poly(UPoly::gen(ctx))
    }

    pub fn num(&self) -> &UPoly {
        &self.num
    }

    pub fn den(&self) -> &UPoly {
        &self.den
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        self.num.ctx()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    /// The constant element of F_q this function equals, if it does.
    pub fn as_constant(&self) -> Option<FqElem> {
        if self.num.is_constant() && self.den.is_one() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den.is_one() && other.den.is_one() {
            return RatFn::from_poly(self.num.add(&other.num));
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        RatFn::new(num, den).expect("nonzero denominator")
    }

    pub fn sub(&self, other: &Self) -> Self {
        if self.den.is_one() && other.den.is_one() {
            return RatFn::from_poly(self.num.sub(&other.num));
        }
        let num = self.num.mul(&other.den).sub(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        RatFn::new(num, den).expect("nonzero denominator")
    }

    pub fn neg(&self) -> Self {
        RatFn { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.den.is_one() && other.den.is_one() {
            return RatFn::from_poly(self.num.mul(&other.num));
        }
        RatFn::new(self.num.mul(&other.num), self.den.mul(&other.den))
            .expect("nonzero denominator")
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFn::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut result = RatFn::one(self.ctx());
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        Ok(result)
    }

    /// The q-power Frobenius. Since coefficients lie in F_q it just spreads
    /// exponents: (sum c_i T^i)^q = sum c_i T^(iq).
    pub fn frobenius(&self) -> Self {
        let spread = |f: &UPoly| -> UPoly {
            let q = f.ctx().q() as usize;
            if f.is_zero() {
                return f.clone();
            }
            let mut out = vec![f.ctx().zero(); (f.coeffs().len() - 1) * q + 1];
            for (i, c) in f.coeffs().iter().enumerate() {
                out[i * q] = c.frobenius_p(f.ctx().m());
            }
            UPoly::new(f.ctx(), out)
        };
        RatFn { num: spread(&self.num), den: spread(&self.den) }
    }

    /// Evaluate at a place given by an element of an extension field; the
    /// embedding carries the UPoly coefficients into that field. Errors if
    /// the denominator vanishes there.
    pub fn eval_embedded(
        &self,
        emb: &crate::algebra::field::Embedding,
        x: &FqElem,
    ) -> Result<FqElem> {
        let eval = |f: &UPoly| -> FqElem {
            let mut acc = emb.to_ctx().zero();
            for c in f.coeffs().iter().rev() {
                acc = acc.mul(x).add(&emb.map(c));
            }
            acc
        };
        let d = eval(&self.den);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(eval(&self.num).mul(&d.inv()?))
    }
}
