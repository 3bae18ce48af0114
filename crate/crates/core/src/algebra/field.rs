//! The finite field F_q, q = p^m with p an odd prime.
//!
//! A [`FieldCtx`] pins down the field: the characteristic p, the extension
//! degree m and a monic irreducible modulus of degree m over F_p. Elements
//! ([`FqElem`]) are coefficient vectors over F_p reduced modulo p, with
//! multiplication reduced modulo the field modulus.
//!
//! Extensions F_{p^n} of F_q = F_{p^m} (needed for torsion counts and for
//! specializing covers at places of higher degree) reuse the same types: an
//! [`Embedding`] maps elements of the small context into the big one by
//! sending the small generator to a root of its modulus.

use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::{Error, Result};

type Coeffs = SmallVec<[u64; 2]>;

// ---------------------------------------------------------------------------
// arithmetic on raw F_p[x] coefficient vectors (used for moduli and FqElem
// internals; coefficients are canonical representatives in 0..p)
// ---------------------------------------------------------------------------

fn pp_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn pp_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0) % p;
        *o = x % p;
    }
    pp_trim(&mut out);
    out
}

fn pp_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    pp_trim(&mut out);
    out
}

/// Remainder of a modulo b; b must be nonzero. Works in place on a copy.
fn pp_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    assert!(!b.is_empty(), "pp_rem: zero modulus");
    let mut r: Vec<u64> = a.to_vec();
    pp_trim(&mut r);
    let db = b.len() - 1;
    let lb_inv = mod_inv(b[db], p);
    while r.len() > db {
        let dr = r.len() - 1;
        let c = (r[dr] * lb_inv) % p;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                let idx = dr - db + j;
                r[idx] = (r[idx] + p * p - c * bj % p) % p;
            }
        }
        r.pop();
        pp_trim(&mut r);
    }
    r
}

fn pp_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    pp_trim(&mut a);
    pp_trim(&mut b);
    while !b.is_empty() {
        let r = pp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    // normalize monic
    if let Some(&lc) = a.last() {
        let inv = mod_inv(lc, p);
        for c in &mut a {
            *c = (*c * inv) % p;
        }
    }
    a
}

fn pp_pow_mod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut b = pp_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            result = pp_rem(&pp_mul(&result, &b, p), m, p);
        }
        b = pp_rem(&pp_mul(&b, &b, p), m, p);
        e >>= 1;
    }
    result
}

/// Deterministic irreducibility test for a polynomial over F_p:
/// f of degree d is irreducible iff x^(p^d) = x mod f and
/// gcd(x^(p^(d/l)) - x, f) = 1 for every prime l dividing d.
fn pp_is_irreducible(f: &[u64], p: u64) -> bool {
    let mut f = f.to_vec();
    pp_trim(&mut f);
    if f.len() < 2 {
        return false; // constants (and zero) are not irreducible
    }
    let d = f.len() - 1;
    if d == 1 {
        return true;
    }
    let x = vec![0, 1];
    // x^(p^k) mod f by iterating the p-power map
    let frob_iter = |k: usize| -> Vec<u64> {
        let mut acc = x.clone();
        for _ in 0..k {
            acc = pp_pow_mod(&acc, p, &f, p);
        }
        acc
    };
    let top = frob_iter(d);
    if pp_sub(&top, &x, p) != Vec::<u64>::new() {
        return false;
    }
    let mut n = d;
    let mut primes = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            primes.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        primes.push(n);
    }
    for l in primes {
        let g = pp_sub(&frob_iter(d / l), &x, p);
        let gc = pp_gcd(&g, &f, p);
        if gc.len() != 1 {
            return false;
        }
    }
    true
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // extended Euclid on (a, p); p prime, a nonzero mod p
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert!(r == 1, "mod_inv: not invertible");
    (t.rem_euclid(p as i128)) as u64
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// ---------------------------------------------------------------------------
// FieldCtx
// ---------------------------------------------------------------------------

/// Defining data for F_q, q = p^m: the odd prime p, the degree m, and a
/// monic irreducible modulus of degree m over F_p.
#[derive(Debug)]
pub struct FieldCtx {
    p: u64,
    m: usize,
    /// monic of degree m, coefficients ascending; for m = 1 this is just x.
    modulus: Vec<u64>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}
impl Eq for FieldCtx {}

impl FieldCtx {
    /// Build a field context with an explicit modulus (ascending
    /// coefficients, length m+1, monic).
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Arc<Self>> {
        if !is_prime(p) || p == 2 {
            return Err(Error::InvalidArgument(format!("p = {p} must be an odd prime")));
        }
        if p > (1 << 20) {
            return Err(Error::Oversize(format!("characteristic {p} too large")));
        }
        let mut modulus = modulus;
        for c in &mut modulus {
            *c %= p;
        }
        pp_trim(&mut modulus);
        if modulus.len() < 2 {
            return Err(Error::InvalidArgument("modulus must have degree >= 1".into()));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::NotMonic("field modulus".into()));
        }
        if !pp_is_irreducible(&modulus, p) {
            return Err(Error::NotIrreducible("field modulus".into()));
        }
        let m = modulus.len() - 1;
        Ok(Arc::new(FieldCtx { p, m, modulus }))
    }

    /// F_{p^m} with the default modulus: x for m = 1, otherwise the first
    /// monic irreducible of degree m in ascending coefficient-index order.
    pub fn new(p: u64, m: usize) -> Result<Arc<Self>> {
        if m == 0 {
            return Err(Error::InvalidArgument("extension degree must be >= 1".into()));
        }
        if !is_prime(p) || p == 2 {
            return Err(Error::InvalidArgument(format!("p = {p} must be an odd prime")));
        }
        if m == 1 {
            return Self::with_modulus(p, vec![0, 1]);
        }
        let count = p.checked_pow(m as u32).ok_or_else(|| {
            Error::Oversize(format!("p^m = {p}^{m} does not fit a machine word"))
        })?;
        if count > (1 << 24) {
            return Err(Error::Oversize(format!("field of size {count} too large")));
        }
        // enumerate lower coefficients (c_0, ..., c_{m-1}) by ascending index
        for idx in 0..count {
            let mut f = Vec::with_capacity(m + 1);
            let mut k = idx;
            for _ in 0..m {
                f.push(k % p);
                k /= p;
            }
            f.push(1);
            if pp_is_irreducible(&f, p) {
                return Self::with_modulus(p, f);
            }
        }
        unreachable!("irreducible polynomials of every degree exist")
    }

    /// F_q by prime-power q.
    pub fn from_q(q: u64) -> Result<Arc<Self>> {
        if q < 3 {
            return Err(Error::InvalidArgument(format!("q = {q} must be an odd prime power >= 3")));
        }
        let mut p = 2;
        while p * p <= q {
            if q % p == 0 {
                break;
            }
            p += 1;
        }
        let p = if q % p == 0 { p } else { q };
        let mut m = 0;
        let mut qq = q;
        while qq % p == 0 {
            qq /= p;
            m += 1;
        }
        if qq != 1 {
            return Err(Error::InvalidArgument(format!("q = {q} is not a prime power")));
        }
        Self::new(p, m)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// q = p^m. Guarded at construction so this cannot overflow.
    pub fn q(&self) -> u64 {
        self.p.pow(self.m as u32)
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(self: &Arc<Self>) -> FqElem {
        FqElem { ctx: Arc::clone(self), c: SmallVec::new() }
    }

    pub fn one(self: &Arc<Self>) -> FqElem {
        self.from_u64(1)
    }

    /// Element from an integer (reduced mod p); lands in the prime field.
    pub fn from_u64(self: &Arc<Self>, n: u64) -> FqElem {
        let r = n % self.p;
        let mut c = SmallVec::new();
        if r != 0 {
            c.push(r);
        }
        FqElem { ctx: Arc::clone(self), c }
    }

    pub fn from_i64(self: &Arc<Self>, n: i64) -> FqElem {
        self.from_u64(n.rem_euclid(self.p as i64) as u64)
    }

    /// Element from a coefficient vector over F_p (ascending powers of the
    /// field generator).
    pub fn from_coeffs(self: &Arc<Self>, coeffs: &[u64]) -> Result<FqElem> {
        if coeffs.len() > self.m {
            return Err(Error::InvalidArgument(format!(
                "coefficient vector of length {} in a degree-{} extension",
                coeffs.len(),
                self.m
            )));
        }
        let mut c: Coeffs = coeffs.iter().map(|&x| x % self.p).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        Ok(FqElem { ctx: Arc::clone(self), c })
    }

    /// The i-th element in the canonical index order (base-p digits).
    pub fn element(self: &Arc<Self>, index: u64) -> FqElem {
        let mut c: Coeffs = SmallVec::new();
        let mut k = index % self.q();
        while k > 0 {
            c.push(k % self.p);
            k /= self.p;
        }
        FqElem { ctx: Arc::clone(self), c }
    }

    /// Iterate all q field elements in index order.
    pub fn elements(self: &Arc<Self>) -> impl Iterator<Item = FqElem> + '_ {
        let ctx = Arc::clone(self);
        (0..self.q()).map(move |i| ctx.element(i))
    }

    /// The multiplicative generator power map x -> x^p on coefficient level
    /// needs the modulus; exposed for internal use by elements.
    fn reduce(&self, raw: Vec<u64>) -> Coeffs {
        let r = if raw.len() > self.m { pp_rem(&raw, &self.modulus, self.p) } else { raw };
        let mut c: Coeffs = r.into_iter().collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        c
    }
}

// ---------------------------------------------------------------------------
// FqElem
// ---------------------------------------------------------------------------

/// An element of F_q, held as a coefficient vector over F_p of length <= m
/// (trailing zeros stripped; the empty vector is zero).
#[derive(Clone)]
pub struct FqElem {
    ctx: Arc<FieldCtx>,
    c: Coeffs,
}

impl PartialEq for FqElem {
    fn eq(&self, other: &Self) -> bool {
        self.same_ctx(other) && self.c == other.c
    }
}
impl Eq for FqElem {}

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fq{:?}", self.c.as_slice())
    }
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ctx.m == 1 {
            write!(f, "{}", self.c.first().copied().unwrap_or(0))
        } else {
            write!(f, "[")?;
            for i in 0..self.ctx.m {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.c.get(i).copied().unwrap_or(0))?;
            }
            write!(f, "]")
        }
    }
}

impl FqElem {
    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    fn same_ctx(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx
    }

    fn check_ctx(&self, other: &Self) {
        assert!(self.same_ctx(other), "FqElem operands from different field contexts");
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0] == 1
    }

    /// Canonical index (base-p digit value) of this element.
    pub fn index(&self) -> u64 {
        let mut acc = 0;
        for &d in self.c.iter().rev() {
            acc = acc * self.ctx.p + d;
        }
        acc
    }

    /// Coefficient vector over F_p, padded to length m.
    pub fn coeffs(&self) -> Vec<u64> {
        let mut v = vec![0; self.ctx.m];
        for (i, &d) in self.c.iter().enumerate() {
            v[i] = d;
        }
        v
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_ctx(other);
        let p = self.ctx.p;
        let n = self.c.len().max(other.c.len());
        let mut c: Coeffs = SmallVec::with_capacity(n);
        for i in 0..n {
            let x = self.c.get(i).copied().unwrap_or(0) + other.c.get(i).copied().unwrap_or(0);
            c.push(x % p);
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        FqElem { ctx: Arc::clone(&self.ctx), c }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_ctx(other);
        let p = self.ctx.p;
        let n = self.c.len().max(other.c.len());
        let mut c: Coeffs = SmallVec::with_capacity(n);
        for i in 0..n {
            let x = self.c.get(i).copied().unwrap_or(0) + p
                - other.c.get(i).copied().unwrap_or(0);
            c.push(x % p);
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        FqElem { ctx: Arc::clone(&self.ctx), c }
    }

    pub fn neg(&self) -> Self {
        let p = self.ctx.p;
        let c: Coeffs = self.c.iter().map(|&x| (p - x) % p).collect();
        FqElem { ctx: Arc::clone(&self.ctx), c }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_ctx(other);
        let p = self.ctx.p;
        // fast path: prime field
        if self.c.len() <= 1 && other.c.len() <= 1 {
            let x = self.c.first().copied().unwrap_or(0) * other.c.first().copied().unwrap_or(0);
            let r = x % p;
            let mut c: Coeffs = SmallVec::new();
            if r != 0 {
                c.push(r);
            }
            return FqElem { ctx: Arc::clone(&self.ctx), c };
        }
        let raw = pp_mul(&self.c, &other.c, p);
        let c = self.ctx.reduce(raw);
        FqElem { ctx: Arc::clone(&self.ctx), c }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.ctx.p;
        if self.c.len() == 1 {
            let mut c: Coeffs = SmallVec::new();
            c.push(mod_inv(self.c[0], p));
            return Ok(FqElem { ctx: Arc::clone(&self.ctx), c });
        }
        // a^(q-2) = a^(-1)
        Ok(self.pow(self.ctx.q() - 2))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut result = self.ctx.one();
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        result
    }

    /// x^(p^k): iterated p-power Frobenius.
    pub fn frobenius_p(&self, k: usize) -> Self {
        let mut acc = self.clone();
        for _ in 0..k {
            acc = acc.pow(self.ctx.p);
        }
        acc
    }

    /// True iff this element is a square in F_q (zero counts as a square).
    pub fn is_square(&self) -> bool {
        if self.is_zero() {
            return true;
        }
        self.pow((self.ctx.q() - 1) / 2).is_one()
    }
}

// ---------------------------------------------------------------------------
// Embedding between field contexts
// ---------------------------------------------------------------------------

/// Embedding F_{p^a} -> F_{p^n} for a | n, realized by sending the small
/// generator to the first root (in index order) of the small modulus in the
/// big field. Root search is a scan, so both fields must be small; that is
/// the regime of every consumer in this crate.
pub struct Embedding {
    from: Arc<FieldCtx>,
    to: Arc<FieldCtx>,
    gen_img: FqElem,
}

impl Embedding {
    pub fn new(from: &Arc<FieldCtx>, to: &Arc<FieldCtx>) -> Result<Self> {
        if from.p != to.p {
            return Err(Error::MixedContexts);
        }
        if to.m % from.m != 0 {
            return Err(Error::InvalidArgument(format!(
                "no embedding of F_{{{}^{}}} into F_{{{}^{}}}",
                from.p, from.m, to.p, to.m
            )));
        }
        if from.m == 1 {
            // prime field embeds coefficientwise
            return Ok(Embedding { from: Arc::clone(from), to: Arc::clone(to), gen_img: to.one() });
        }
        if to.q() > (1 << 24) {
            return Err(Error::Oversize("embedding root scan".into()));
        }
        // find a root of the small modulus in the big field
        let mods: Vec<FqElem> = from.modulus.iter().map(|&c| to.from_u64(c)).collect();
        for cand in to.elements() {
            let mut acc = to.zero();
            for c in mods.iter().rev() {
                acc = acc.mul(&cand).add(c);
            }
            if acc.is_zero() {
                return Ok(Embedding { from: Arc::clone(from), to: Arc::clone(to), gen_img: cand });
            }
        }
        unreachable!("the modulus splits in any extension of degree divisible by its own")
    }

    pub fn from_ctx(&self) -> &Arc<FieldCtx> {
        &self.from
    }

    pub fn to_ctx(&self) -> &Arc<FieldCtx> {
        &self.to
    }

    pub fn map(&self, x: &FqElem) -> FqElem {
        assert!(
            Arc::ptr_eq(x.ctx(), &self.from) || *x.ctx() == self.from,
            "embedding applied to element of the wrong field"
        );
        let mut acc = self.to.zero();
        for &d in x.c.iter().rev() {
            acc = acc.mul(&self.gen_img).add(&self.to.from_u64(d));
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f3_basics() {
        let f3 = FieldCtx::new(3, 1).unwrap();
        let two = f3.from_u64(2);
        assert_eq!(two.add(&two), f3.one());
        assert_eq!(two.mul(&two), f3.one());
        assert_eq!(two.inv().unwrap(), two);
        assert!(f3.from_u64(1).is_square());
        assert!(!f3.from_u64(2).is_square());
    }

    #[test]
    fn f9_arithmetic() {
        // F_9 = F_3[i], i^2 = -1 with default modulus x^2 + 1
        let f9 = FieldCtx::new(3, 2).unwrap();
        assert_eq!(f9.modulus(), &[1, 0, 1]);
        let i = f9.from_coeffs(&[0, 1]).unwrap();
        assert_eq!(i.mul(&i), f9.from_u64(2));
        let x = f9.from_coeffs(&[1, 2]).unwrap();
        assert_eq!(x.mul(&x.inv().unwrap()), f9.one());
        // Frobenius x -> x^3 fixes F_3 and conjugates i
        assert_eq!(i.frobenius_p(1), i.neg());
        assert_eq!(f9.from_u64(2).frobenius_p(1), f9.from_u64(2));
    }

    #[test]
    fn rejects_bad_ctx() {
        assert!(FieldCtx::new(2, 1).is_err());
        assert!(FieldCtx::new(4, 1).is_err());
        assert!(FieldCtx::with_modulus(3, vec![2, 0, 1]).is_err()); // x^2+2 splits
    }

    #[test]
    fn element_index_roundtrip() {
        let f25 = FieldCtx::new(5, 2).unwrap();
        for i in 0..25 {
            assert_eq!(f25.element(i).index(), i);
        }
    }

    #[test]
    fn embedding_f9_into_f81() {
        let f9 = FieldCtx::new(3, 2).unwrap();
        let f81 = FieldCtx::new(3, 4).unwrap();
        let emb = Embedding::new(&f9, &f81).unwrap();
        let i = f9.from_coeffs(&[0, 1]).unwrap();
        let img = emb.map(&i);
        // the image must still square to -1
        assert_eq!(img.mul(&img), f81.from_i64(-1));
        // embedding is a field hom on a few random-ish pairs
        for a in 0..9u64 {
            for b in 0..9u64 {
                let (x, y) = (f9.element(a), f9.element(b));
                assert_eq!(emb.map(&x.mul(&y)), emb.map(&x).mul(&emb.map(&y)));
                assert_eq!(emb.map(&x.add(&y)), emb.map(&x).add(&emb.map(&y)));
            }
        }
    }
}
