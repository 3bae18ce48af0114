//! The residue ring A/p for a monic irreducible p: a finite field with
//! q^deg(p) elements, kept in polynomial-residue form.

use std::fmt;
use std::sync::Arc;

use crate::algebra::upoly::UPoly;
use crate::error::{Error, Result};

#[derive(Debug)]
pub struct ModCtx {
    modulus: UPoly,
}

impl PartialEq for ModCtx {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus
    }
}
impl Eq for ModCtx {}

impl ModCtx {
    pub fn new(modulus: UPoly) -> Result<Arc<Self>> {
        if !modulus.is_monic() {
            return Err(Error::NotMonic(modulus.to_string()));
        }
        if !modulus.is_irreducible() {
            return Err(Error::NotIrreducible(modulus.to_string()));
        }
        Ok(Arc::new(ModCtx { modulus }))
    }

    pub fn modulus(&self) -> &UPoly {
        &self.modulus
    }

    pub fn reduce(self: &Arc<Self>, value: UPoly) -> ModElem {
        let value = value.rem(&self.modulus).expect("nonzero modulus");
        ModElem { ctx: Arc::clone(self), value }
    }
}

/// A residue class modulo a monic irreducible polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModElem {
    ctx: Arc<ModCtx>,
    value: UPoly,
}

impl fmt::Display for ModElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.ctx.modulus)
    }
}

impl ModElem {
    pub fn value(&self) -> &UPoly {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    fn check_ctx(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx,
            "ModElem operands from different moduli"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_ctx(other);
        self.ctx.reduce(self.value.add(&other.value))
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_ctx(other);
        self.ctx.reduce(self.value.mul(&other.value))
    }

    pub fn pow(&self, e: u128) -> Self {
        let value = self.value.pow_mod(e, &self.ctx.modulus).expect("nonzero modulus");
        ModElem { ctx: Arc::clone(&self.ctx), value }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let q = self.value.ctx().q() as u128;
        let d = self.ctx.modulus.degree() as u32;
        Ok(self.pow(q.pow(d) - 2))
    }
}
