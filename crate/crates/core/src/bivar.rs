//! Bivariate polynomials over a coefficient field, sparse in (x, y).

use std::collections::BTreeMap;
use std::fmt;

use crate::error::Result;
use crate::ore::CoeffField;
use crate::series::TruncSeries;

#[derive(Clone)]
pub struct BivarPoly<F: CoeffField> {
    field: F,
    terms: BTreeMap<(u32, u32), F::Elem>,
}

impl<F: CoeffField> PartialEq for BivarPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_field(&other.field) && self.terms == other.terms
    }
}

impl<F: CoeffField> fmt::Debug for BivarPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BivarPoly({self})")
    }
}

impl<F: CoeffField> fmt::Display for BivarPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j), c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            if i > 0 {
                write!(f, "*x")?;
                if i > 1 {
                    write!(f, "^{i}")?;
                }
            }
            if j > 0 {
                write!(f, "*y")?;
                if j > 1 {
                    write!(f, "^{j}")?;
                }
            }
        }
        Ok(())
    }
}

impl<F: CoeffField> BivarPoly<F> {
    pub fn zero(field: F) -> Self {
        BivarPoly { field, terms: BTreeMap::new() }
    }

    pub fn from_terms(field: F, terms: Vec<((u32, u32), F::Elem)>) -> Self {
        let mut out = BivarPoly::zero(field);
        for ((i, j), c) in terms {
            out.add_term(i, j, c);
        }
        out
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), F::Elem> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> F::Elem {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: F::Elem) {
        if self.field.is_zero(&c) {
            return;
        }
        let f = &self.field;
        match self.terms.entry((i, j)) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = f.add(e.get(), &c);
                if f.is_zero(&s) {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, j), c) in &other.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, j), c) in &other.terms {
            out.add_term(i, j, self.field.neg(c));
        }
        out
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        if self.field.is_zero(c) {
            return BivarPoly::zero(self.field.clone());
        }
        let mut out = BivarPoly::zero(self.field.clone());
        for (&(i, j), a) in &self.terms {
            out.add_term(i, j, self.field.mul(a, c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = BivarPoly::zero(self.field.clone());
        for (&(i1, j1), a) in &self.terms {
            for (&(i2, j2), b) in &other.terms {
                out.add_term(i1 + i2, j1 + j2, self.field.mul(a, b));
            }
        }
        out
    }

    pub fn x_degree(&self) -> u32 {
        self.terms.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    pub fn y_degree(&self) -> u32 {
        self.terms.keys().map(|&(_, j)| j).max().unwrap_or(0)
    }

    pub fn map_coeffs<G, M>(&self, field: G, f: M) -> BivarPoly<G>
    where
        G: CoeffField,
        M: Fn(&F::Elem) -> G::Elem,
    {
        let mut out = BivarPoly::zero(field);
        for (&(i, j), c) in &self.terms {
            out.add_term(i, j, f(c));
        }
        out
    }

    /// Evaluate at a pair of series.
    pub fn eval_series(
        &self,
        xs: &TruncSeries<F>,
        ys: &TruncSeries<F>,
    ) -> Result<TruncSeries<F>> {
        let max_x = self.x_degree() as usize;
        let max_y = self.y_degree() as usize;
        let mut xpow = Vec::with_capacity(max_x + 1);
        let mut ypow = Vec::with_capacity(max_y + 1);
        for i in 0..=max_x {
            if i == 0 {
                xpow.push(TruncSeries::constant(
                    self.field.clone(),
                    self.field.one(),
                    crate::series::PREC_EXACT,
                ));
            } else {
                xpow.push(xpow[i - 1].mul(xs));
            }
        }
        for j in 0..=max_y {
            if j == 0 {
                ypow.push(TruncSeries::constant(
                    self.field.clone(),
                    self.field.one(),
                    crate::series::PREC_EXACT,
                ));
            } else {
                ypow.push(ypow[j - 1].mul(ys));
            }
        }
        let mut acc = TruncSeries::zero(self.field.clone(), crate::series::PREC_EXACT);
        for (&(i, j), c) in &self.terms {
            let term = xpow[i as usize].mul(&ypow[j as usize]).scale(c);
            acc = acc.add(&term);
        }
        Ok(acc)
    }
}
