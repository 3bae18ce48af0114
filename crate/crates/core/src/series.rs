//! Truncated Laurent series in the uniformizer s, with tracked absolute
//! precision, over any coefficient field. A series stores coefficients for
//! s^val .. s^(val+len-1); coefficients from there up to s^(prec-1) are
//! exactly zero, and the series is unknown from s^prec on. Arithmetic
//! takes the contract minimum of the operand precisions and never inflates
//! it. Exact polynomial inputs carry the PREC_EXACT sentinel; the implicit
//! zero tail keeps their storage finite.

use std::fmt;

use crate::error::{Error, Result};
use crate::ore::CoeffField;

/// Sentinel for "effectively exact" inputs; large but safe under addition.
pub const PREC_EXACT: i64 = 1 << 40;

/// Relative precisions above this are rejected by the operations that must
/// materialize a full coefficient window (inversion, roots).
const MATERIALIZE_CAP: i64 = 1 << 16;

#[derive(Clone)]
pub struct TruncSeries<F: CoeffField> {
    field: F,
    val: i64,
    /// stored window starting at s^val; first and last entries nonzero
    /// (canonical form), interior zeros explicit; everything between the
    /// end of the window and prec is exactly zero
    coeffs: Vec<F::Elem>,
    prec: i64,
}

impl<F: CoeffField> PartialEq for TruncSeries<F> {
    fn eq(&self, other: &Self) -> bool {
        self.val == other.val && self.prec == other.prec && self.coeffs == other.coeffs
    }
}

impl<F: CoeffField> fmt::Debug for TruncSeries<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<F: CoeffField> fmt::Display for TruncSeries<F> {
    // documented form: s^v * (c0 + c1*s + ... + O(s^rel)), prefix
    // omitted for valuation zero
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shifted = self.val != 0 && !self.coeffs.is_empty();
        if shifted {
            match self.val {
                1 => write!(f, "s * (")?,
                v => write!(f, "s^{v} * (")?,
            }
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if self.field.is_zero(c) {
                continue;
            }
            let e = if shifted { i as i64 } else { self.val + i as i64 };
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*s")?,
                _ => write!(f, "({c})*s^{e}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        let tail = if shifted { self.prec - self.val } else { self.prec };
        if self.prec >= PREC_EXACT {
            write!(f, " (exact)")?;
        } else {
            write!(f, " + O(s^{tail})")?;
        }
        if shifted {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl<F: CoeffField> TruncSeries<F> {
    /// Build from coefficients starting at s^val; entries at or beyond
    /// prec are truncated away, everything else between the given window
    /// and prec is exactly zero.
    pub fn new(field: F, val: i64, mut coeffs: Vec<F::Elem>, prec: i64) -> Self {
        assert!(prec >= val, "precision below valuation");
        let want = (prec - val).min(coeffs.len() as i64).max(0) as usize;
        coeffs.truncate(want);
        let mut out = TruncSeries { field, val, coeffs, prec };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        while self.coeffs.last().map_or(false, |c| self.field.is_zero(c)) {
            self.coeffs.pop();
        }
        let mut strip = 0;
        for c in &self.coeffs {
            if self.field.is_zero(c) {
                strip += 1;
            } else {
                break;
            }
        }
        if strip > 0 {
            self.coeffs.drain(..strip);
            self.val += strip as i64;
        }
        if self.coeffs.is_empty() {
            self.val = self.prec;
        }
    }

    /// The zero-to-precision series.
    pub fn zero(field: F, prec: i64) -> Self {
        TruncSeries { field, val: prec, coeffs: Vec::new(), prec }
    }

    pub fn constant(field: F, c: F::Elem, prec: i64) -> Self {
        TruncSeries::new(field, 0, vec![c], prec)
    }

    /// c * s^k
    pub fn monomial(field: F, c: F::Elem, k: i64, prec: i64) -> Self {
        TruncSeries::new(field, k, vec![c], prec)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// Valuation of the leading stored coefficient; equals prec for a
    /// series that is zero to its precision.
    pub fn val(&self) -> i64 {
        self.val
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn is_zero_to_prec(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&F::Elem> {
        self.coeffs.first()
    }

    /// End of the stored window (exclusive).
    fn window_end(&self) -> i64 {
        self.val + self.coeffs.len() as i64
    }

    /// Coefficient of s^e: known-zero outside the stored window below
    /// prec, None at or beyond the precision.
    pub fn coeff(&self, e: i64) -> Option<F::Elem> {
        if e >= self.prec {
            return None;
        }
        if e < self.val || e >= self.window_end() {
            return Some(self.field.zero());
        }
        Some(self.coeffs[(e - self.val) as usize].clone())
    }

    pub fn truncate(&self, prec: i64) -> Self {
        if prec >= self.prec {
            return self.clone();
        }
        let val = self.val.min(prec);
        let keep = (prec - val).max(0) as usize;
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(keep);
        let mut out = TruncSeries { field: self.field.clone(), val, coeffs, prec };
        out.normalize();
        out
    }

    /// Multiply by s^k.
    pub fn shift(&self, k: i64) -> Self {
        TruncSeries {
            field: self.field.clone(),
            val: self.val + k,
            coeffs: self.coeffs.clone(),
            prec: self.prec.saturating_add(k).min(PREC_EXACT),
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        if self.field.is_zero(c) {
            return TruncSeries::zero(self.field.clone(), self.prec);
        }
        let coeffs = self.coeffs.iter().map(|a| self.field.mul(a, c)).collect();
        let mut out =
            TruncSeries { field: self.field.clone(), val: self.val, coeffs, prec: self.prec };
        out.normalize();
        out
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.field.neg(a)).collect();
        TruncSeries { field: self.field.clone(), val: self.val, coeffs, prec: self.prec }
    }

    pub fn add(&self, other: &Self) -> Self {
        let prec = self.prec.min(other.prec);
        // stored extents only; zero-to-prec operands contribute nothing
        let end_a = if self.coeffs.is_empty() { i64::MIN } else { self.window_end() };
        let end_b = if other.coeffs.is_empty() { i64::MIN } else { other.window_end() };
        let end = end_a.max(end_b).min(prec);
        let val_a = if self.coeffs.is_empty() { i64::MAX } else { self.val };
        let val_b = if other.coeffs.is_empty() { i64::MAX } else { other.val };
        let val = val_a.min(val_b).min(prec);
        if end <= val {
            return TruncSeries::zero(self.field.clone(), prec);
        }
        let mut coeffs = Vec::with_capacity((end - val) as usize);
        for e in val..end {
            let a = self.coeff(e).unwrap_or_else(|| self.field.zero());
            let b = other.coeff(e).unwrap_or_else(|| self.field.zero());
            coeffs.push(self.field.add(&a, &b));
        }
        let mut out = TruncSeries { field: self.field.clone(), val, coeffs, prec };
        out.normalize();
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Product; precision min(p1 + v2, p2 + v1) (capped at PREC_EXACT).
    pub fn mul(&self, other: &Self) -> Self {
        let prec = (self.prec.saturating_add(other.val))
            .min(other.prec.saturating_add(self.val))
            .min(PREC_EXACT);
        if self.is_zero_to_prec() || other.is_zero_to_prec() {
            return TruncSeries::zero(self.field.clone(), prec);
        }
        let val = self.val + other.val;
        let n = (prec - val)
            .min(self.coeffs.len() as i64 + other.coeffs.len() as i64 - 1)
            .max(0) as usize;
        let mut coeffs = vec![self.field.zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if self.field.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= n {
                    break;
                }
                coeffs[i + j] = self.field.add(&coeffs[i + j], &self.field.mul(a, b));
            }
        }
        let mut out = TruncSeries { field: self.field.clone(), val, coeffs, prec };
        out.normalize();
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        if e == 0 {
            return TruncSeries::constant(
                self.field.clone(),
                self.field.one(),
                self.prec - self.val,
            );
        }
        let mut acc = self.clone();
        for _ in 1..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Inverse of a series with invertible leading coefficient; the
    /// relative precision is preserved: prec' = prec - 2 val. Must
    /// materialize the full window, so the relative precision is capped.
    pub fn inv(&self) -> Result<Self> {
        let c0 = match self.leading() {
            Some(c) => c.clone(),
            None => return Err(Error::NonUnit("zero-to-precision series".into())),
        };
        let rel = self.prec - self.val;
        if rel > MATERIALIZE_CAP {
            return Err(Error::Oversize(format!(
                "inverting a series with relative precision {rel}; truncate first"
            )));
        }
        let c0_inv = self.field.inv(&c0).map_err(|_| Error::NonUnit(format!("{self}")))?;
        let n = rel as usize;
        let mut out = Vec::with_capacity(n);
        out.push(c0_inv.clone());
        for k in 1..n {
            // b_k = -c0^{-1} sum_{i=1..k} a_i b_{k-i}
            let mut acc = self.field.zero();
            for i in 1..=k.min(self.coeffs.len() - 1) {
                let ai = &self.coeffs[i];
                if self.field.is_zero(ai) {
                    continue;
                }
                acc = self.field.add(&acc, &self.field.mul(ai, &out[k - i]));
            }
            out.push(self.field.neg(&self.field.mul(&c0_inv, &acc)));
        }
        let mut res = TruncSeries {
            field: self.field.clone(),
            val: -self.val,
            coeffs: out,
            prec: self.prec - 2 * self.val,
        };
        res.normalize();
        Ok(res)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// The n-th root with leading coefficient 1. Requires: n coprime to
    /// the characteristic, valuation divisible by n, and leading
    /// coefficient exactly 1 (the normalized case; anything else errors).
    pub fn nth_root(&self, n: u32) -> Result<Self> {
        let p = self.field.base_ctx().p();
        if n == 0 || n as u64 % p == 0 {
            return Err(Error::InvalidArgument(format!(
                "{n}-th root is inseparable in characteristic {p}"
            )));
        }
        let c0 = match self.leading() {
            Some(c) => c.clone(),
            None => return Err(Error::NonUnit("root of zero-to-precision series".into())),
        };
        if c0 != self.field.one() {
            return Err(Error::InvalidArgument(
                "nth_root requires leading coefficient 1".into(),
            ));
        }
        if self.val % n as i64 != 0 {
            return Err(Error::InvalidArgument(format!(
                "valuation {} not divisible by {n}",
                self.val
            )));
        }
        let rel = self.prec - self.val;
        if rel > MATERIALIZE_CAP {
            return Err(Error::Oversize(format!(
                "root of a series with relative precision {rel}; truncate first"
            )));
        }
        // unit part 1 + w, w = O(s); solve g^n = 1 + w with g = 1 + ...
        let unit = TruncSeries {
            field: self.field.clone(),
            val: 0,
            coeffs: self.coeffs.clone(),
            prec: rel,
        };
        let n_inv = self
            .field
            .inv(&self.field.embed_fq(&self.field.base_ctx().from_u64(n as u64)))
            .expect("n is a unit mod p");
        let mut g = vec![self.field.one()];
        for k in 1..rel as usize {
            let gk_series = TruncSeries::new(self.field.clone(), 0, g.clone(), k as i64 + 1);
            let gpow = gk_series.pow(n);
            let have = gpow.coeff(k as i64).unwrap_or_else(|| self.field.zero());
            let want = unit.coeff(k as i64).unwrap();
            // adding g_k s^k changes coefficient k of g^n by n * g_k
            let gk = self.field.mul(&self.field.sub(&want, &have), &n_inv);
            g.push(gk);
        }
        let mut root = TruncSeries {
            field: self.field.clone(),
            val: self.val / n as i64,
            coeffs: g,
            prec: self.val / n as i64 + rel,
        };
        root.normalize();
        Ok(root)
    }

    /// Substitute: self(inner) for an inner series of valuation >= 1;
    /// self must have valuation >= 0. The result's precision accounts for
    /// both the propagated precision and self's own truncation error
    /// O(inner^prec).
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if self.val < 0 {
            return Err(Error::InvalidArgument("composition needs outer valuation >= 0".into()));
        }
        if inner.val < 1 {
            return Err(Error::InvalidArgument("composition needs inner valuation >= 1".into()));
        }
        let cap = if self.prec >= PREC_EXACT {
            PREC_EXACT
        } else {
            inner.val.saturating_mul(self.prec)
        };
        let mut acc = TruncSeries::zero(self.field.clone(), PREC_EXACT);
        for i in (0..self.coeffs.len()).rev() {
            acc = acc.mul(inner);
            let c = &self.coeffs[i];
            if !self.field.is_zero(c) {
                acc = acc.add(&TruncSeries::constant(self.field.clone(), c.clone(), PREC_EXACT));
            }
        }
        // self = s^val * (stored part, zero tail): shift by val copies
        for _ in 0..self.val {
            acc = acc.mul(inner);
        }
        Ok(acc.truncate(acc.prec().min(cap)))
    }

    /// Re-coefficient the series through a field map.
    pub fn map_coeffs<G, M>(&self, field: G, f: M) -> TruncSeries<G>
    where
        G: CoeffField,
        M: Fn(&F::Elem) -> G::Elem,
    {
        let mut out = TruncSeries {
            field,
            val: self.val,
            coeffs: self.coeffs.iter().map(f).collect(),
            prec: self.prec,
        };
        out.normalize();
        out
    }
}

/// A series times a formal power of t, for quantities like t(az) that are
/// t^k * (unit series in s); s = t^(q-1).
#[derive(Clone, Debug)]
pub struct TPowSeries<F: CoeffField> {
    pub tpow: i64,
    pub series: TruncSeries<F>,
}

impl<F: CoeffField> TPowSeries<F> {
    pub fn new(tpow: i64, series: TruncSeries<F>) -> Self {
        TPowSeries { tpow, series }
    }

    pub fn mul(&self, other: &Self) -> Self {
        TPowSeries { tpow: self.tpow + other.tpow, series: self.series.mul(&other.series) }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(TPowSeries {
            tpow: self.tpow - other.tpow,
            series: self.series.mul(&other.series.inv()?),
        })
    }

    pub fn pow(&self, e: u32) -> Self {
        TPowSeries { tpow: self.tpow * e as i64, series: self.series.pow(e) }
    }

    /// Collapse into a pure s-series; the accumulated t-power must be a
    /// multiple of q-1.
    pub fn into_s_series(self) -> Result<TruncSeries<F>> {
        let q1 = self.series.field().base_ctx().q() as i64 - 1;
        if self.tpow % q1 != 0 {
            return Err(Error::InvalidArgument(format!(
                "t-power {} is not a multiple of q-1 = {q1}",
                self.tpow
            )));
        }
        Ok(self.series.shift(self.tpow / q1))
    }
}
