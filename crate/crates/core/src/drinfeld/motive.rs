//! T-motive matrices of isogenies and the normalized determinant constant.
//!
//! The motive of phi is L{tau} as a module over B = L[Y], with Y acting by
//! right multiplication with phi_T and L acting on the left; the basis is
//! {1, tau, ..., tau^(r-1)}. An isogeny u: phi -> phi' induces the
//! B-module map m -> m*u from the motive of phi' to that of phi, whose
//! matrix we compute by greedy reduction against deg(tau^j phi_T^k) = j + rk.

use std::fmt;

use crate::algebra::field::FqElem;
use crate::drinfeld::{atkin_lehner, flag_to_phi, DrinfeldModule, FlagPoint};
use crate::error::{Error, Result};
use crate::ore::{CoeffField, OrePoly};

/// A polynomial in Y = 1 (x) T with coefficients in the coefficient field.
#[derive(Clone)]
pub struct YPoly<F: CoeffField> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: CoeffField> PartialEq for YPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_field(&other.field) && self.coeffs == other.coeffs
    }
}

impl<F: CoeffField> fmt::Debug for YPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "YPoly({self})")
    }
}

impl<F: CoeffField> fmt::Display for YPoly<F> {
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
                1 => write!(f, "({c})*Y")?,
                _ => write!(f, "({c})*Y^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<F: CoeffField> YPoly<F> {
    pub fn new(field: F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().map_or(false, |c| field.is_zero(c)) {
            coeffs.pop();
        }
        YPoly { field, coeffs }
    }

    pub fn zero(field: F) -> Self {
        YPoly { field, coeffs: Vec::new() }
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        YPoly::new(field, vec![c])
    }

    /// c * Y^k
    pub fn monomial(field: F, c: F::Elem, k: usize) -> Self {
        let mut coeffs = vec![field.zero(); k];
        coeffs.push(c);
        YPoly::new(field, coeffs)
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

    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.field.add(&self.coeff(i), &other.coeff(i)));
        }
        YPoly::new(self.field.clone(), out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.field.sub(&self.coeff(i), &other.coeff(i)));
        }
        YPoly::new(self.field.clone(), out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return YPoly::zero(self.field.clone());
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if self.field.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = self.field.add(&out[i + j], &self.field.mul(a, b));
            }
        }
        YPoly::new(self.field.clone(), out)
    }

    pub fn neg(&self) -> Self {
        YPoly {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| self.field.neg(c)).collect(),
        }
    }

    /// Substitute the field's T-image for Y (collapse 1 (x) T to T (x) 1).
    pub fn eval_at_t(&self) -> F::Elem {
        let t = self.field.t_image();
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = self.field.add(&self.field.mul(&acc, &t), c);
        }
        acc
    }
}

/// The matrix of the motive map m -> m*u with respect to the tau-power
/// bases; column j holds the reduction of tau^j * u.
#[derive(Clone)]
pub struct MotiveMatrix<F: CoeffField> {
    rank: usize,
    /// entries[i][j]
    entries: Vec<Vec<YPoly<F>>>,
}

impl<F: CoeffField> fmt::Debug for MotiveMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MotiveMatrix {}x{} [", self.rank, self.rank)?;
        for row in &self.entries {
            write!(f, "  [")?;
            for (j, e) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{e}")?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl<F: CoeffField> MotiveMatrix<F> {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn entry(&self, i: usize, j: usize) -> &YPoly<F> {
        &self.entries[i][j]
    }

    /// Matrix product (entries commute, so plain row-by-column works).
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.rank, other.rank);
        let field = self.entries[0][0].field.clone();
        let n = self.rank;
        let mut entries = vec![vec![YPoly::zero(field.clone()); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = YPoly::zero(field.clone());
                for (k, other_row) in other.entries.iter().enumerate() {
                    acc = acc.add(&self.entries[i][k].mul(&other_row[j]));
                }
                entries[i][j] = acc;
            }
        }
        MotiveMatrix { rank: n, entries }
    }

    /// Determinant by Leibniz expansion; ranks here are tiny.
    pub fn det(&self) -> YPoly<F> {
        let field = self.entries[0][0].field.clone();
        let n = self.rank;
        let mut total = YPoly::zero(field.clone());
        let mut perm: Vec<usize> = (0..n).collect();
        // iterative Heap's algorithm, tracking the sign
        let mut c = vec![0usize; n];
        let mut sign = 1i32;
        let add_term = |perm: &[usize], sign: i32, total: &mut YPoly<F>| {
            let mut prod = YPoly::constant(field.clone(), field.one());
            for (i, &pi) in perm.iter().enumerate() {
                prod = prod.mul(&self.entries[i][pi]);
                if prod.is_zero() {
                    return;
                }
            }
            if sign < 0 {
                prod = prod.neg();
            }
            *total = total.add(&prod);
        };
        add_term(&perm, sign, &mut total);
        let mut i = 1;
        while i < n {
            if c[i] < i {
                if i % 2 == 0 {
                    perm.swap(0, i);
                } else {
                    perm.swap(c[i], i);
                }
                sign = -sign;
                add_term(&perm, sign, &mut total);
                c[i] += 1;
                i = 1;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
        total
    }
}

/// Express w in the basis {tau^j phi_T^k : 0 <= j < r} of the motive of
/// `dm` by greedy leading-term elimination (deg tau^j phi_T^k = j + rk).
fn reduce_against_motive<F: CoeffField>(
    w: &OrePoly<F>,
    dm: &DrinfeldModule<F>,
) -> Vec<YPoly<F>> {
    let f = w.field().clone();
    let r = dm.rank();
    let mut out = vec![YPoly::zero(f.clone()); r];
    // cache phi_T^k
    let mut phi_pows: Vec<OrePoly<F>> = vec![OrePoly::one(f.clone())];
    let mut w = w.clone();
    while !w.is_zero() {
        let n = w.degree() as usize;
        let k = n / r;
        let j = n % r;
        while phi_pows.len() <= k {
            let next = phi_pows.last().unwrap().mul(dm.phi_t()).expect("same field");
            phi_pows.push(next);
        }
        let m = OrePoly::tau_pow(f.clone(), j).mul(&phi_pows[k]).expect("same field");
        debug_assert_eq!(m.degree() as usize, n);
        let lam = f.div(&w.leading(), &m.leading()).expect("nonzero leading coefficient");
        out[j] = out[j].add(&YPoly::monomial(f.clone(), lam.clone(), k));
        w = w.sub(&m.scale(&lam)).expect("same field");
    }
    out
}

/// The matrix of the motive map induced by an isogeny u: source -> target
/// (so u * source.phi_T = target.phi_T * u, which is checked). Column j is
/// the reduction of tau^j * u in the motive of the source module.
pub fn motive_matrix<F: CoeffField>(
    u: &OrePoly<F>,
    source: &DrinfeldModule<F>,
    target: &DrinfeldModule<F>,
) -> Result<MotiveMatrix<F>> {
    if source.rank() != target.rank() {
        return Err(Error::InvalidArgument("isogeny between modules of different rank".into()));
    }
    let lhs = u.mul(source.phi_t())?;
    let rhs = target.phi_t().mul(u)?;
    if lhs != rhs {
        return Err(Error::IsogenyMismatch);
    }
    let f = u.field().clone();
    let r = source.rank();
    let mut entries = vec![vec![YPoly::zero(f.clone()); r]; r];
    for j in 0..r {
        let w = OrePoly::tau_pow(f.clone(), j).mul(u)?;
        let col = reduce_against_motive(&w, source);
        for (i, e) in col.into_iter().enumerate() {
            entries[i][j] = e;
        }
    }
    Ok(MotiveMatrix { rank: r, entries })
}

/// The dual isogeny u-hat with u-hat * u = phi_T (of the source); errors
/// if u does not right-divide phi_T.
pub fn dual_isogeny<F: CoeffField>(
    u: &OrePoly<F>,
    source: &DrinfeldModule<F>,
) -> Result<OrePoly<F>> {
    let (quo, rem) = source.phi_t().right_divmod(u)?;
    if !rem.is_zero() {
        return Err(Error::InvalidArgument("u does not right-divide phi_T".into()));
    }
    Ok(quo)
}

/// The normalized motive determinant constant zeta of an even-rank
/// moduli point:
///
/// - u = (a_{s+1} tau + 1)...(a_r tau + 1) is the Atkin-Lehner isogeny
///   from phi to phi' = flag_to_phi(w(pt)), with w(pt) taken at its exact
///   (unrescaled) coordinate representative;
/// - det of the motive matrix must be a pure monomial l * Y^s;
/// - the wedge modules of phi and phi' are normalized to the Carlitz
///   module by (q-1)-th roots of their leading terms. Those roots are
///   never constructed: the ratio of the two leading terms is a monomial
///   T^E prod a_j^(c_j) with structurally known integer exponents, all of
///   which must be divisible by q-1 for the root factors to cancel.
///
/// The result l * T^(E/(q-1)) * prod a_j^(c_j/(q-1)) must be a constant in
/// F_q^*; anything else signals an implementation bug and errors.
pub fn motive_det_zeta<F: CoeffField>(pt: &FlagPoint<F>) -> Result<FqElem> {
    let r = pt.rank();
    if r % 2 != 0 {
        return Err(Error::InvalidArgument("zeta needs even rank".into()));
    }
    if !pt.is_moduli_point() {
        return Err(Error::Degenerate("zeta needs a moduli point (no zero coordinates)".into()));
    }
    let s = r / 2;
    let f = pt.field().clone();
    let q = f.base_ctx().q() as i128;

    let source = flag_to_phi(pt)?;
    let w_pt = atkin_lehner(pt)?;
    let target = flag_to_phi(&w_pt)?;
    let factors: Vec<(F::Elem, F::Elem)> =
        pt.coords()[s..].iter().map(|a| (a.clone(), f.one())).collect();
    let u = OrePoly::product_of_linears(f.clone(), &factors)?;

    let m = motive_matrix(&u, &source, &target)?;
    let det = m.det();
    if det.degree() != s as i64 {
        return Err(Error::Degenerate(format!(
            "motive determinant has Y-degree {} instead of s = {s}",
            det.degree()
        )));
    }
    for i in 0..s {
        if !f.is_zero(&det.coeff(i)) {
            return Err(Error::Degenerate(
                "motive determinant is not a pure monomial l * Y^s".into(),
            ));
        }
    }
    let l = det.coeff(s);

    // Leading terms of the wedge modules are (-1)^(r-1) prod a_i^(q^(i-1))
    // resp. the same in the w-transported coordinates b_i = T^(e_i) a_(pi(i));
    // the sign cancels in the ratio. Structural exponents:
    //   E   = sum e_i q^(i-1)
    //   c_j = q^(pi^(-1)(j) - 1) - q^(j-1)
    let mut e_exp: Vec<i128> = vec![0; r];
    e_exp[0] = q;
    for e in e_exp.iter_mut().take(s).skip(1) {
        *e = q - 1;
    }
    e_exp[s] = -1;
    let mut big_e: i128 = 0;
    let mut qpow: i128 = 1;
    for &e in &e_exp {
        big_e += e * qpow;
        qpow *= q;
    }
    let qm1 = q - 1;
    if big_e % qm1 != 0 {
        return Err(Error::Degenerate("root factors fail to cancel (T-exponent)".into()));
    }
    // pi(i) = s+i for i <= s, pi(i) = i-s for i > s; so pi^(-1)(j) = s+j
    // for j <= s and j-s for j > s (1-based).
    let mut zeta = f.mul(&l, &f.pow(&f.t_image(), (big_e / qm1) as i64)?);
    for j in 1..=r {
        let pij = if j <= s { s + j } else { j - s };
        let c_j = qpow_i128(q, pij as u32 - 1) - qpow_i128(q, j as u32 - 1);
        if c_j % qm1 != 0 {
            return Err(Error::Degenerate(format!(
                "root factors fail to cancel (exponent of a_{j})"
            )));
        }
        let a_pow = f.pow(&pt.coords()[j - 1], (c_j / qm1) as i64)?;
        zeta = f.mul(&zeta, &a_pow);
    }
    match f.as_fq(&zeta) {
        Some(c) if !c.is_zero() => Ok(c),
        _ => Err(Error::Degenerate(format!(
            "normalized determinant {zeta} is not a constant in F_q^*"
        ))),
    }
}

fn qpow_i128(q: i128, e: u32) -> i128 {
    q.pow(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::FieldCtx;
    use crate::algebra::ratfn::RatFn;
    use crate::algebra::upoly::UPoly;
    use crate::ore::RatField;
    use std::sync::Arc;

    fn f3() -> Arc<FieldCtx> {
        FieldCtx::new(3, 1).unwrap()
    }

    fn kfield() -> RatField {
        RatField::new(&f3())
    }

    fn tpoly(ints: &[i64]) -> RatFn {
        RatFn::from_poly(UPoly::from_ints(&f3(), ints))
    }

    fn rat(num: &[i64], den: &[i64]) -> RatFn {
        RatFn::new(UPoly::from_ints(&f3(), num), UPoly::from_ints(&f3(), den)).unwrap()
    }

    #[test]
    fn motive_matrix_rank_two_anchor() {
        // a1 = a2 = 1: matrix [[1, Y-T],[1, -T]], determinant -Y
        let k = kfield();
        let pt = FlagPoint::new(k.clone(), vec![k.one(), k.one()]).unwrap();
        let source = flag_to_phi(&pt).unwrap();
        let target = flag_to_phi(&atkin_lehner(&pt).unwrap()).unwrap();
        let u = OrePoly::new(k.clone(), vec![k.one(), k.one()]); // tau + 1
        let m = motive_matrix(&u, &source, &target).unwrap();
        let t = k.t_image();
        assert_eq!(m.entry(0, 0), &YPoly::constant(k.clone(), k.one()));
        assert_eq!(m.entry(0, 1), &YPoly::new(k.clone(), vec![t.neg(), k.one()])); // Y - T
        assert_eq!(m.entry(1, 0), &YPoly::constant(k.clone(), k.one()));
        assert_eq!(m.entry(1, 1), &YPoly::constant(k.clone(), t.neg()));
        let det = m.det();
        assert_eq!(det, YPoly::new(k.clone(), vec![k.zero(), tpoly(&[2])])); // -Y
    }

    #[test]
    fn identity_isogeny_gives_identity_matrix() {
        let k = kfield();
        let pt = FlagPoint::new(k.clone(), vec![tpoly(&[1, 1]), tpoly(&[2])]).unwrap();
        let dm = flag_to_phi(&pt).unwrap();
        let one = OrePoly::one(k.clone());
        let m = motive_matrix(&one, &dm, &dm).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                if i == j {
                    assert_eq!(m.entry(i, j), &YPoly::constant(k.clone(), k.one()));
                } else {
                    assert!(m.entry(i, j).is_zero());
                }
            }
        }
    }

    #[test]
    fn phi_t_as_isogeny_has_det_y_pow_r() {
        let k = kfield();
        let pt = FlagPoint::new(k.clone(), vec![tpoly(&[0, 1]), tpoly(&[1, 1])]).unwrap();
        let dm = flag_to_phi(&pt).unwrap();
        let m = motive_matrix(dm.phi_t(), &dm, &dm).unwrap();
        // phi_T acts as multiplication by Y: det = Y^r exactly
        let det = m.det();
        assert_eq!(det, YPoly::monomial(k.clone(), k.one(), 2));
    }

    #[test]
    fn isogeny_condition_enforced() {
        let k = kfield();
        let pt = FlagPoint::new(k.clone(), vec![k.one(), k.one()]).unwrap();
        let dm = flag_to_phi(&pt).unwrap();
        // tau + 1 is not an endomorphism of phi itself
        let u = OrePoly::new(k.clone(), vec![k.one(), k.one()]);
        assert!(matches!(motive_matrix(&u, &dm, &dm), Err(Error::IsogenyMismatch)));
    }

    #[test]
    fn dual_composition_acts_as_y() {
        // u-hat * u = phi_T, so the motive matrices compose to Y * Id and
        // the determinants multiply to Y^r
        let k = kfield();
        for (a1, a2) in [
            (k.one(), k.one()),
            (tpoly(&[1, 1]), tpoly(&[2, 0, 1])),
            (rat(&[1], &[0, 1]), tpoly(&[0, 2])),
        ] {
            let pt = FlagPoint::new(k.clone(), vec![a1, a2]).unwrap();
            let source = flag_to_phi(&pt).unwrap();
            let target = flag_to_phi(&atkin_lehner(&pt).unwrap()).unwrap();
            let u = OrePoly::new(k.clone(), vec![k.one(), pt.coords()[1].clone()]);
            let uhat = dual_isogeny(&u, &source).unwrap();
            // u-hat is an isogeny target -> source
            let mu = motive_matrix(&u, &source, &target).unwrap();
            let muhat = motive_matrix(&uhat, &target, &source).unwrap();
            // m -> m u-hat u realizes multiplication by Y on M_source:
            // matrix product M(u) M(u-hat) in the composition order of
            // the reductions
            let prod = mu.mul(&muhat);
            let y = YPoly::monomial(k.clone(), k.one(), 1);
            for i in 0..2 {
                for j in 0..2 {
                    if i == j {
                        assert_eq!(prod.entry(i, j), &y);
                    } else {
                        assert!(prod.entry(i, j).is_zero(), "off-diagonal {:?}", prod.entry(i, j));
                    }
                }
            }
            let dets = mu.det().mul(&muhat.det());
            assert_eq!(dets, YPoly::monomial(k.clone(), k.one(), 2));
        }
    }

    #[test]
    fn zeta_rank_four_constant() {
        // no closed form is known at rank 4; the value is computed and
        // frozen as a regression baseline: zeta = 1 for q = 3
        let k = kfield();
        let pts: Vec<Vec<RatFn>> = vec![
            vec![tpoly(&[1]), tpoly(&[1]), tpoly(&[1]), tpoly(&[1])],
            vec![tpoly(&[0, 1]), tpoly(&[1, 1]), tpoly(&[2]), tpoly(&[1, 0, 1])],
            vec![tpoly(&[2, 1]), tpoly(&[0, 0, 1]), tpoly(&[1]), tpoly(&[2, 2])],
            vec![tpoly(&[1, 2]), tpoly(&[2, 0, 1]), tpoly(&[0, 1]), tpoly(&[1, 1, 1])],
            vec![rat(&[2], &[0, 1]), tpoly(&[1, 1]), tpoly(&[1, 2, 1]), tpoly(&[0, 2])],
        ];
        for coords in pts {
            let pt = FlagPoint::new(k.clone(), coords).unwrap();
            let z = motive_det_zeta(&pt).unwrap();
            assert!(z.is_one(), "rank-4 zeta changed: {z}");
        }
    }

    #[test]
    fn zeta_is_minus_one_rank_two() {
        let k = kfield();
        let pts = [
            vec![k.one(), k.one()],
            vec![tpoly(&[1, 1]), tpoly(&[2])],
            vec![rat(&[1], &[0, 1]), tpoly(&[0, 0, 1])],
            vec![tpoly(&[2, 1, 1]), rat(&[0, 1], &[1, 1])],
        ];
        for coords in pts {
            let pt = FlagPoint::new(k.clone(), coords).unwrap();
            let z = motive_det_zeta(&pt).unwrap();
            assert_eq!(z, f3().from_i64(-1));
        }
    }
}
