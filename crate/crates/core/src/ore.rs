//! The twisted polynomial ring L{tau} with tau x = x^q tau, over any
//! coefficient field carrying a designated q-Frobenius, plus the passage to
//! additive polynomials.

use std::fmt;
use std::sync::Arc;

use crate::algebra::field::{Embedding, FieldCtx, FqElem};
use crate::algebra::quadext::{QuadCtx, QuadExt};
use crate::algebra::ratfn::RatFn;
use crate::algebra::upoly::UPoly;
use crate::error::{Error, Result};

/// Capability bundle for coefficient fields of L{tau}: exact field
/// arithmetic, the q-power Frobenius, an embedding of the constants F_q,
/// and a designated image of T (the structure element every Drinfeld
/// module in this crate is anchored to).
pub trait CoeffField: Clone {
    type Elem: Clone + PartialEq + fmt::Debug + fmt::Display;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// x -> x^q for the base field size q this ring twists by.
    fn frobenius(&self, a: &Self::Elem) -> Self::Elem;
    /// The constants F_q sit inside every coefficient field.
    fn embed_fq(&self, c: &FqElem) -> Self::Elem;
    /// The image of T in this field.
    fn t_image(&self) -> Self::Elem;
    /// Base field context (the q of the twist).
    fn base_ctx(&self) -> &Arc<FieldCtx>;
    fn same_field(&self, other: &Self) -> bool;
    /// If the element lies in the constants F_q, return it there.
    fn as_fq(&self, a: &Self::Elem) -> Option<FqElem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn frobenius_iter(&self, a: &Self::Elem, k: usize) -> Self::Elem {
        let mut acc = a.clone();
        for _ in 0..k {
            acc = self.frobenius(&acc);
        }
        acc
    }

    fn pow(&self, a: &Self::Elem, e: i64) -> Result<Self::Elem> {
        let mut base = if e < 0 { self.inv(a)? } else { a.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        Ok(acc)
    }
}

// ---------------------------------------------------------------------------
// Coefficient field instances
// ---------------------------------------------------------------------------

/// K = F_q(T) with its q-power Frobenius; T maps to T.
#[derive(Clone)]
pub struct RatField {
    ctx: Arc<FieldCtx>,
}

impl RatField {
    pub fn new(ctx: &Arc<FieldCtx>) -> Self {
        RatField { ctx: Arc::clone(ctx) }
    }
}

impl CoeffField for RatField {
    type Elem = RatFn;

    fn zero(&self) -> RatFn {
        RatFn::zero(&self.ctx)
    }
    fn one(&self) -> RatFn {
        RatFn::one(&self.ctx)
    }
    fn add(&self, a: &RatFn, b: &RatFn) -> RatFn {
        a.add(b)
    }
    fn sub(&self, a: &RatFn, b: &RatFn) -> RatFn {
        a.sub(b)
    }
    fn neg(&self, a: &RatFn) -> RatFn {
        a.neg()
    }
    fn mul(&self, a: &RatFn, b: &RatFn) -> RatFn {
        a.mul(b)
    }
    fn inv(&self, a: &RatFn) -> Result<RatFn> {
        a.inv()
    }
    fn is_zero(&self, a: &RatFn) -> bool {
        a.is_zero()
    }
    fn frobenius(&self, a: &RatFn) -> RatFn {
        a.frobenius()
    }
    fn embed_fq(&self, c: &FqElem) -> RatFn {
        RatFn::constant(c.clone())
    }
    fn t_image(&self) -> RatFn {
        RatFn::gen(&self.ctx)
    }
    fn base_ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }
    fn same_field(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx
    }
    fn as_fq(&self, a: &RatFn) -> Option<FqElem> {
        a.as_constant()
    }
}

/// L = K(sqrt(N)); T maps to T in the base component.
#[derive(Clone)]
pub struct QuadField {
    ctx: Arc<QuadCtx>,
}

impl QuadField {
    pub fn new(ctx: &Arc<QuadCtx>) -> Self {
        QuadField { ctx: Arc::clone(ctx) }
    }

    pub fn quad_ctx(&self) -> &Arc<QuadCtx> {
        &self.ctx
    }
}

impl CoeffField for QuadField {
    type Elem = QuadExt;

    fn zero(&self) -> QuadExt {
        QuadExt::zero(&self.ctx)
    }
    fn one(&self) -> QuadExt {
        QuadExt::one(&self.ctx)
    }
    fn add(&self, a: &QuadExt, b: &QuadExt) -> QuadExt {
        a.add(b)
    }
    fn sub(&self, a: &QuadExt, b: &QuadExt) -> QuadExt {
        a.sub(b)
    }
    fn neg(&self, a: &QuadExt) -> QuadExt {
        a.neg()
    }
    fn mul(&self, a: &QuadExt, b: &QuadExt) -> QuadExt {
        a.mul(b)
    }
    fn inv(&self, a: &QuadExt) -> Result<QuadExt> {
        a.inv()
    }
    fn is_zero(&self, a: &QuadExt) -> bool {
        a.is_zero()
    }
    fn frobenius(&self, a: &QuadExt) -> QuadExt {
        a.frobenius()
    }
    fn embed_fq(&self, c: &FqElem) -> QuadExt {
        QuadExt::from_base(&self.ctx, RatFn::constant(c.clone()))
    }
    fn t_image(&self) -> QuadExt {
        QuadExt::from_base(&self.ctx, RatFn::gen(self.ctx.field_ctx()))
    }
    fn base_ctx(&self) -> &Arc<FieldCtx> {
        self.ctx.field_ctx()
    }
    fn same_field(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx
    }
    fn as_fq(&self, a: &QuadExt) -> Option<FqElem> {
        if !a.radical_part().is_zero() {
            return None;
        }
        a.base().as_constant()
    }
}

/// A finite coefficient field F_{p^n} containing the base F_q = F_{p^m},
/// with T specialized to a chosen element. Used for torsion-count oracles
/// and other finite tests.
#[derive(Clone)]
pub struct FinField {
    emb: Arc<Embedding>,
    t_img: FqElem,
}

impl FinField {
    /// Coefficient field = extension context, base = the F_q of the twist,
    /// with T |-> t_img (an element of the extension).
    pub fn new(base: &Arc<FieldCtx>, ext: &Arc<FieldCtx>, t_img: FqElem) -> Result<Self> {
        let emb = Embedding::new(base, ext)?;
        if !(Arc::ptr_eq(t_img.ctx(), ext) || t_img.ctx() == ext) {
            return Err(Error::MixedContexts);
        }
        Ok(FinField { emb: Arc::new(emb), t_img })
    }

    /// The common case: base and coefficient field coincide.
    pub fn self_field(ctx: &Arc<FieldCtx>, t_img: FqElem) -> Result<Self> {
        Self::new(ctx, ctx, t_img)
    }

    pub fn ext_ctx(&self) -> &Arc<FieldCtx> {
        self.emb.to_ctx()
    }
}

impl CoeffField for FinField {
    type Elem = FqElem;

    fn zero(&self) -> FqElem {
        self.emb.to_ctx().zero()
    }
    fn one(&self) -> FqElem {
        self.emb.to_ctx().one()
    }
    fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        a.add(b)
    }
    fn sub(&self, a: &FqElem, b: &FqElem) -> FqElem {
        a.sub(b)
    }
    fn neg(&self, a: &FqElem) -> FqElem {
        a.neg()
    }
    fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        a.mul(b)
    }
    fn inv(&self, a: &FqElem) -> Result<FqElem> {
        a.inv()
    }
    fn is_zero(&self, a: &FqElem) -> bool {
        a.is_zero()
    }
    fn frobenius(&self, a: &FqElem) -> FqElem {
        a.frobenius_p(self.emb.from_ctx().m())
    }
    fn embed_fq(&self, c: &FqElem) -> FqElem {
        self.emb.map(c)
    }
    fn t_image(&self) -> FqElem {
        self.t_img.clone()
    }
    fn base_ctx(&self) -> &Arc<FieldCtx> {
        self.emb.from_ctx()
    }
    fn same_field(&self, other: &Self) -> bool {
        self.emb.to_ctx() == other.emb.to_ctx() && self.t_img == other.t_img
    }
    fn as_fq(&self, a: &FqElem) -> Option<FqElem> {
        // base fields here are tiny; a scan beats bookkeeping a section
        self.emb.from_ctx().elements().find(|c| self.emb.map(c) == *a)
    }
}

// ---------------------------------------------------------------------------
// OrePoly
// ---------------------------------------------------------------------------

/// A twisted polynomial sum c_i tau^i. Multiplication obeys
/// tau c = c^q tau; the zero polynomial is the empty list.
#[derive(Clone)]
pub struct OrePoly<F: CoeffField> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: CoeffField> PartialEq for OrePoly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_field(&other.field) && self.coeffs == other.coeffs
    }
}

impl<F: CoeffField> fmt::Debug for OrePoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ore({})", self)
    }
}

impl<F: CoeffField> fmt::Display for OrePoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if self.field.is_zero(c) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*tau")?,
                _ => write!(f, "({c})*tau^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<F: CoeffField> OrePoly<F> {
    pub fn new(field: F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().map_or(false, |c| field.is_zero(c)) {
            coeffs.pop();
        }
        OrePoly { field, coeffs }
    }

    pub fn zero(field: F) -> Self {
        OrePoly { field, coeffs: Vec::new() }
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        OrePoly::new(field, vec![c])
    }

    pub fn one(field: F) -> Self {
        let c = field.one();
        OrePoly { field, coeffs: vec![c] }
    }

    /// The generator tau.
    pub fn tau(field: F) -> Self {
        let coeffs = vec![field.zero(), field.one()];
        OrePoly { field, coeffs }
    }

    /// tau^k
    pub fn tau_pow(field: F, k: usize) -> Self {
        let mut coeffs = vec![field.zero(); k];
        coeffs.push(field.one());
        OrePoly { field, coeffs }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// tau-degree; -1 stands in for the minus-infinity degree of zero
    /// (any sentinel below 0 works for the degree arithmetic here).
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn leading(&self) -> F::Elem {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.field.same_field(&other.field) {
            Ok(())
        } else {
            Err(Error::MixedContexts)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.field.add(&self.coeff(i), &other.coeff(i)));
        }
        Ok(OrePoly::new(self.field.clone(), out))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.field.sub(&self.coeff(i), &other.coeff(i)));
        }
        Ok(OrePoly::new(self.field.clone(), out))
    }

    pub fn neg(&self) -> Self {
        OrePoly {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| self.field.neg(c)).collect(),
        }
    }

    /// Noncommutative product under the twist rule:
    /// (a_i tau^i)(b_j tau^j) = a_i b_j^(q^i) tau^(i+j).
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(OrePoly::zero(self.field.clone()));
        }
        let f = &self.field;
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            // b_j^(q^i), computed incrementally over j would re-twist per i;
            // twist each b once per i instead
            for (j, b) in other.coeffs.iter().enumerate() {
                if f.is_zero(b) {
                    continue;
                }
                let tw = f.frobenius_iter(b, i);
                let term = f.mul(a, &tw);
                out[i + j] = f.add(&out[i + j], &term);
            }
        }
        Ok(OrePoly::new(self.field.clone(), out))
    }

    /// Left scalar multiple c * w.
    pub fn scale(&self, c: &F::Elem) -> Self {
        OrePoly::new(
            self.field.clone(),
            self.coeffs.iter().map(|a| self.field.mul(c, a)).collect(),
        )
    }

    /// Right Euclidean division: self = quo * div + rem with
    /// deg rem < deg div. Unique; errors on a zero divisor.
    pub fn right_divmod(&self, div: &Self) -> Result<(Self, Self)> {
        self.check_field(div)?;
        if div.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = self.field.clone();
        let dd = div.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        let mut quo = vec![f.zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd {
            let dr = rem.len() - 1;
            // leading term: c tau^(dr-dd) * div has leading c * lead(div)^(q^(dr-dd))
            let k = dr - dd;
            let lead_tw = f.frobenius_iter(&div.coeffs[dd], k);
            let c = f.div(&rem[dr], &lead_tw)?;
            if !f.is_zero(&c) {
                for (j, b) in div.coeffs.iter().enumerate() {
                    let t = f.mul(&c, &f.frobenius_iter(b, k));
                    rem[k + j] = f.sub(&rem[k + j], &t);
                }
                quo[k] = c;
            }
            rem.pop();
            while rem.last().map_or(false, |x| f.is_zero(x)) {
                rem.pop();
            }
        }
        Ok((OrePoly::new(f.clone(), quo), OrePoly::new(f, rem)))
    }

    /// Left-to-right Ore product of linear factors (c_i tau + const_i).
    /// Every leading coefficient must be nonzero.
    pub fn product_of_linears(field: F, factors: &[(F::Elem, F::Elem)]) -> Result<Self> {
        let mut acc = OrePoly::one(field.clone());
        for (c, k) in factors {
            if field.is_zero(c) {
                return Err(Error::Degenerate("zero leading coefficient in linear factor".into()));
            }
            let lin = OrePoly::new(field.clone(), vec![k.clone(), c.clone()]);
            acc = acc.mul(&lin)?;
        }
        Ok(acc)
    }

    /// Reinterpret sum c_i tau^i as the additive polynomial sum c_i X^(q^i).
    pub fn to_additive(&self) -> AdditivePoly<F> {
        AdditivePoly { field: self.field.clone(), coeffs: self.coeffs.clone() }
    }
}

// ---------------------------------------------------------------------------
// AdditivePoly
// ---------------------------------------------------------------------------

/// sum c_i X^(q^i): the evaluation form of an Ore polynomial, F_q-linear as
/// a map.
#[derive(Clone, Debug)]
pub struct AdditivePoly<F: CoeffField> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: CoeffField> AdditivePoly<F> {
    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// The coefficient of X (the linear part).
    pub fn linear_coeff(&self) -> F::Elem {
        self.coeffs.first().cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Evaluate at a point of the coefficient field.
    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let mut acc = self.field.zero();
        let mut xq = x.clone();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                xq = self.field.frobenius(&xq);
            }
            if !self.field.is_zero(c) {
                acc = self.field.add(&acc, &self.field.mul(c, &xq));
            }
        }
        acc
    }

    /// X-degree q^n of the classical polynomial this represents.
    pub fn x_degree(&self) -> Option<u128> {
        if self.coeffs.is_empty() {
            return None;
        }
        let q = self.field.base_ctx().q() as u128;
        Some(q.pow(self.coeffs.len() as u32 - 1))
    }
}

impl AdditivePoly<FinField> {
    /// Expand into a classical univariate polynomial over the coefficient
    /// field (guarded: the X-degree must stay small).
    pub fn to_upoly(&self) -> Result<UPoly> {
        let ctx = self.field.ext_ctx();
        if self.coeffs.is_empty() {
            return Ok(UPoly::zero(ctx));
        }
        let q = self.field.base_ctx().q();
        let deg = (q as u128).pow(self.coeffs.len() as u32 - 1);
        if deg > 1 << 20 {
            return Err(Error::Oversize(format!("additive polynomial of X-degree {deg}")));
        }
        let mut out = vec![ctx.zero(); deg as usize + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[q.pow(i as u32) as usize] = c.clone();
        }
        Ok(UPoly::new(ctx, out))
    }
}

/// Expand an additive polynomial with F_q(T)-coefficients that are all
/// polynomial into a bivariate-in-X form: the list of (q^i, UPoly)
/// coefficient pairs. Used by the Carlitz discriminant.
pub fn additive_to_tx_coeffs(a: &AdditivePoly<RatField>) -> Result<Vec<(u128, UPoly)>> {
    let q = a.field().base_ctx().q() as u128;
    let mut out = Vec::new();
    for (i, c) in a.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if !c.is_poly() {
            return Err(Error::InvalidArgument(
                "additive polynomial has non-polynomial coefficients".into(),
            ));
        }
        out.push((q.pow(i as u32), c.num().clone()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Arc<FieldCtx> {
        FieldCtx::new(3, 1).unwrap()
    }

    fn kfield() -> RatField {
        RatField::new(&f3())
    }

    fn tpoly(ints: &[i64]) -> RatFn {
        RatFn::from_poly(UPoly::from_ints(&f3(), ints))
    }

    #[test]
    fn twist_rule() {
        let k = kfield();
        // tau * T = T^q * tau
        let tau = OrePoly::tau(k.clone());
        let t = OrePoly::constant(k.clone(), k.t_image());
        let prod = tau.mul(&t).unwrap();
        assert_eq!(prod.coeff(1), tpoly(&[0, 0, 0, 1])); // T^3
        assert!(prod.coeff(0).is_zero());
    }

    #[test]
    fn rank_two_product_anchor() {
        let k = kfield();
        // (tau + T)(tau + 1) = tau^2 + (T+1) tau + T
        let a = OrePoly::new(k.clone(), vec![k.t_image(), k.one()]);
        let b = OrePoly::new(k.clone(), vec![k.one(), k.one()]);
        let prod = a.mul(&b).unwrap();
        assert_eq!(prod.coeff(0), tpoly(&[0, 1]));
        assert_eq!(prod.coeff(1), tpoly(&[1, 1]));
        assert_eq!(prod.coeff(2), tpoly(&[1]));
        assert_eq!(prod.degree(), 2);
    }

    #[test]
    fn symbolic_rank_two_at_random_values() {
        // (a1 tau + T)(a2 tau + 1) = a1 a2^q tau^2 + (T a2 + a1) tau + T
        let k = kfield();
        let t = k.t_image();
        let samples = [
            (tpoly(&[1, 1]), tpoly(&[2, 0, 1])),
            (tpoly(&[2]), tpoly(&[0, 1, 1])),
            (tpoly(&[0, 2, 1]), tpoly(&[1, 2])),
        ];
        for (a1, a2) in samples {
            let f1 = OrePoly::new(k.clone(), vec![t.clone(), a1.clone()]);
            let f2 = OrePoly::new(k.clone(), vec![k.one(), a2.clone()]);
            let prod = f1.mul(&f2).unwrap();
            assert_eq!(prod.coeff(2), a1.mul(&a2.frobenius()));
            assert_eq!(prod.coeff(1), t.mul(&a2).add(&a1));
            assert_eq!(prod.coeff(0), t);
        }
    }

    #[test]
    fn right_division_examples() {
        let k = kfield();
        let t = k.t_image();
        // w = tau^2 + (T+1) tau + T
        let w = OrePoly::new(k.clone(), vec![t.clone(), tpoly(&[1, 1]), k.one()]);
        // divide by tau + 1: quotient tau + T, remainder 0
        let d = OrePoly::new(k.clone(), vec![k.one(), k.one()]);
        let (q, r) = w.right_divmod(&d).unwrap();
        assert_eq!(q, OrePoly::new(k.clone(), vec![t.clone(), k.one()]));
        assert!(r.is_zero());
        // divide by tau: quotient tau + (T+1), remainder T
        let tau = OrePoly::tau(k.clone());
        let (q2, r2) = w.right_divmod(&tau).unwrap();
        assert_eq!(q2, OrePoly::new(k.clone(), vec![tpoly(&[1, 1]), k.one()]));
        assert_eq!(r2, OrePoly::constant(k.clone(), t.clone()));
        // divide by itself
        let (q3, r3) = w.right_divmod(&w).unwrap();
        assert_eq!(q3, OrePoly::one(k.clone()));
        assert!(r3.is_zero());
        // zero divisor rejected
        assert!(w.right_divmod(&OrePoly::zero(k)).is_err());
    }

    #[test]
    fn product_of_linears_matches_mul() {
        let k = kfield();
        let t = k.t_image();
        let prod =
            OrePoly::product_of_linears(k.clone(), &[(k.one(), t.clone()), (k.one(), k.one())])
                .unwrap();
        let a = OrePoly::new(k.clone(), vec![t.clone(), k.one()]);
        let b = OrePoly::new(k.clone(), vec![k.one(), k.one()]);
        assert_eq!(prod, a.mul(&b).unwrap());
        // single factor
        let single =
            OrePoly::product_of_linears(k.clone(), &[(tpoly(&[0, 1]), t.clone())]).unwrap();
        assert_eq!(single, OrePoly::new(k.clone(), vec![t.clone(), tpoly(&[0, 1])]));
        // zero leading coefficient rejected
        assert!(OrePoly::product_of_linears(k.clone(), &[(k.zero(), t)]).is_err());
    }

    #[test]
    fn degree_and_constant_bookkeeping_r4() {
        let k = kfield();
        let factors: Vec<(RatFn, RatFn)> = vec![
            (tpoly(&[1, 1]), k.t_image()),
            (tpoly(&[2, 0, 1]), k.one()),
            (tpoly(&[1, 2]), k.one()),
            (tpoly(&[2]), k.one()),
        ];
        let prod = OrePoly::product_of_linears(k.clone(), &factors).unwrap();
        assert_eq!(prod.degree(), 4);
        // constant term = product of the constants = T
        assert_eq!(prod.coeff(0), k.t_image());
    }

    #[test]
    fn to_additive_carlitz_shape() {
        let k = kfield();
        // T + tau -> T X + X^q
        let ct = OrePoly::new(k.clone(), vec![k.t_image(), k.one()]);
        let add = ct.to_additive();
        assert_eq!(add.coeffs().len(), 2);
        assert_eq!(add.linear_coeff(), k.t_image());
        assert_eq!(add.x_degree(), Some(3));
        // zero maps to the zero map
        assert!(OrePoly::zero(k).to_additive().coeffs().is_empty());
    }

    #[test]
    fn additive_evaluation_is_linear_over_f81() {
        let f81 = FieldCtx::new(3, 4).unwrap();
        let base = f3();
        let fin = FinField::new(&base, &f81, f81.element(5)).unwrap();
        let w = OrePoly::new(
            fin.clone(),
            vec![f81.element(7), f81.element(11), f81.element(2)],
        );
        let add = w.to_additive();
        for (ia, ib) in [(3u64, 19u64), (25, 61), (0, 80), (44, 44)] {
            let a = f81.element(ia);
            let b = f81.element(ib);
            let lhs = add.eval(&a.add(&b));
            let rhs = add.eval(&a).add(&add.eval(&b));
            assert_eq!(lhs, rhs);
        }
        // F_3-scalars pull out
        let c = f81.from_u64(2);
        let x = f81.element(17);
        assert_eq!(add.eval(&c.mul(&x)), c.mul(&add.eval(&x)));
    }

    #[test]
    fn ore_ring_axioms_small_random() {
        // associativity and distributivity over F_9 coefficients
        let f9 = FieldCtx::new(3, 2).unwrap();
        let fin = FinField::self_field(&f9, f9.element(3)).unwrap();
        let mk = |seed: u64| {
            let n = (seed % 3 + 1) as usize;
            let coeffs: Vec<FqElem> =
                (0..=n).map(|i| f9.element((seed * 31 + 7 * i as u64) % 9)).collect();
            OrePoly::new(fin.clone(), coeffs)
        };
        for s in 0..40u64 {
            let (a, b, c) = (mk(s), mk(s + 101), mk(s + 202));
            let ab_c = a.mul(&b).unwrap().mul(&c).unwrap();
            let a_bc = a.mul(&b.mul(&c).unwrap()).unwrap();
            assert_eq!(ab_c, a_bc);
            let left = a.mul(&b.add(&c).unwrap()).unwrap();
            let right = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
            assert_eq!(left, right);
        }
    }

    #[test]
    fn reconstruction_after_division() {
        let f9 = FieldCtx::new(3, 2).unwrap();
        let fin = FinField::self_field(&f9, f9.element(4)).unwrap();
        let mk = |seed: u64, n: usize| {
            let coeffs: Vec<FqElem> =
                (0..=n).map(|i| f9.element((seed * 17 + 5 * i as u64) % 9)).collect();
            OrePoly::new(fin.clone(), coeffs)
        };
        for s in 1..30u64 {
            let w = mk(s, (s % 5) as usize + 1);
            let mut d = mk(s + 7, (s % 3) as usize);
            if d.is_zero() {
                d = OrePoly::one(fin.clone());
            }
            let (q, r) = w.right_divmod(&d).unwrap();
            let back = q.mul(&d).unwrap().add(&r).unwrap();
            assert_eq!(back, w);
            assert!(r.degree() < d.degree());
        }
    }

    #[test]
    fn additive_composition_matches_ore_mul() {
        let f81 = FieldCtx::new(3, 4).unwrap();
        let fin = FinField::new(&f3(), &f81, f81.element(2)).unwrap();
        let a = OrePoly::new(fin.clone(), vec![f81.element(5), f81.element(9)]);
        let b = OrePoly::new(fin.clone(), vec![f81.element(3), f81.element(1), f81.element(7)]);
        let ab = a.mul(&b).unwrap().to_additive();
        let (aa, ba) = (a.to_additive(), b.to_additive());
        for i in 0..81u64 {
            let x = f81.element(i);
            assert_eq!(ab.eval(&x), aa.eval(&ba.eval(&x)));
        }
    }
}
