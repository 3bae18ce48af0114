//! The quadratic extension L = K(sqrt(N)) of K = F_q(T).
//!
//! Elements are a + b*sqrt(N) with a, b rational functions and N a fixed
//! squarefree non-square polynomial (the radicand). Conjugation flips the
//! sign of b.

use std::fmt;
use std::sync::Arc;

use crate::algebra::field::FieldCtx;
use crate::algebra::ratfn::RatFn;
use crate::algebra::upoly::UPoly;
use crate::error::{Error, Result};

/// Shared context fixing the radicand of a quadratic extension.
#[derive(Debug)]
pub struct QuadCtx {
    radicand: UPoly,
}

impl PartialEq for QuadCtx {
    fn eq(&self, other: &Self) -> bool {
        self.radicand == other.radicand
    }
}
impl Eq for QuadCtx {}

impl QuadCtx {
    /// The radicand must be a squarefree non-square; degree >= 1 and
    /// squarefree suffices for every use in this crate, and is what we
    /// check (a nonconstant squarefree polynomial is never a square).
    pub fn new(radicand: UPoly) -> Result<Arc<Self>> {
        if radicand.degree() < 1 {
            return Err(Error::InvalidArgument(
                "quadratic radicand must be a nonconstant polynomial".into(),
            ));
        }
        if radicand.gcd(&radicand.derivative()).degree() != 0 {
            return Err(Error::InvalidArgument(format!(
                "quadratic radicand {radicand} is not squarefree"
            )));
        }
        Ok(Arc::new(QuadCtx { radicand }))
    }

    pub fn radicand(&self) -> &UPoly {
        &self.radicand
    }

    pub fn field_ctx(&self) -> &Arc<FieldCtx> {
        self.radicand.ctx()
    }
}

/// a + b*sqrt(N)
#[derive(Clone, PartialEq, Eq)]
pub struct QuadExt {
    ctx: Arc<QuadCtx>,
    a: RatFn,
    b: RatFn,
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadExt({self})")
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "({})*w", self.b)
        } else {
            write!(f, "{} + ({})*w", self.a, self.b)
        }
    }
}

impl QuadExt {
    pub fn new(ctx: &Arc<QuadCtx>, a: RatFn, b: RatFn) -> Self {
        QuadExt { ctx: Arc::clone(ctx), a, b }
    }

    pub fn from_base(ctx: &Arc<QuadCtx>, a: RatFn) -> Self {
        let b = RatFn::zero(a.ctx());
        QuadExt { ctx: Arc::clone(ctx), a, b }
    }

    pub fn zero(ctx: &Arc<QuadCtx>) -> Self {
        Self::from_base(ctx, RatFn::zero(ctx.field_ctx()))
    }

    pub fn one(ctx: &Arc<QuadCtx>) -> Self {
        Self::from_base(ctx, RatFn::one(ctx.field_ctx()))
    }

    /// sqrt(N) itself.
    pub fn sqrt_radicand(ctx: &Arc<QuadCtx>) -> Self {
        QuadExt {
            ctx: Arc::clone(ctx),
            a: RatFn::zero(ctx.field_ctx()),
            b: RatFn::one(ctx.field_ctx()),
        }
    }

    pub fn ctx(&self) -> &Arc<QuadCtx> {
        &self.ctx
    }

    pub fn base(&self) -> &RatFn {
        &self.a
    }

    pub fn radical_part(&self) -> &RatFn {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    /// Galois conjugate over K: b -> -b.
    pub fn conjugate(&self) -> Self {
        QuadExt { ctx: Arc::clone(&self.ctx), a: self.a.clone(), b: self.b.neg() }
    }

    fn check_ctx(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx,
            "QuadExt operands from different radicand contexts"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_ctx(other);
        QuadExt {
            ctx: Arc::clone(&self.ctx),
            a: self.a.add(&other.a),
            b: self.b.add(&other.b),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_ctx(other);
        QuadExt {
            ctx: Arc::clone(&self.ctx),
            a: self.a.sub(&other.a),
            b: self.b.sub(&other.b),
        }
    }

    pub fn neg(&self) -> Self {
        QuadExt { ctx: Arc::clone(&self.ctx), a: self.a.neg(), b: self.b.neg() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_ctx(other);
        let n = RatFn::from_poly(self.ctx.radicand.clone());
        // (a + b w)(c + d w) = (ac + bd N) + (ad + bc) w
        let a = self.a.mul(&other.a).add(&self.b.mul(&other.b).mul(&n));
        let b = self.a.mul(&other.b).add(&self.b.mul(&other.a));
        QuadExt { ctx: Arc::clone(&self.ctx), a, b }
    }

    /// Field norm a^2 - N b^2 down to K.
    pub fn norm(&self) -> RatFn {
        let n = RatFn::from_poly(self.ctx.radicand.clone());
        self.a.mul(&self.a).sub(&self.b.mul(&self.b).mul(&n))
    }

    pub fn inv(&self) -> Result<Self> {
        let nm = self.norm();
        if nm.is_zero() {
            // for squarefree non-square N the norm vanishes only at zero
            return Err(Error::DivisionByZero);
        }
        let inv = nm.inv()?;
        Ok(QuadExt {
            ctx: Arc::clone(&self.ctx),
            a: self.a.mul(&inv),
            b: self.b.neg().mul(&inv),
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// q-power Frobenius: component Frobenius and the twist
    /// (sqrt N)^q = N^((q-1)/2) * sqrt(N).
    pub fn frobenius(&self) -> Self {
        let q = self.a.ctx().q();
        let tw = RatFn::from_poly(self.ctx.radicand.pow((q - 1) / 2));
        QuadExt {
            ctx: Arc::clone(&self.ctx),
            a: self.a.frobenius(),
            b: self.b.frobenius().mul(&tw),
        }
    }
}
