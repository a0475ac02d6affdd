use std::collections::BTreeMap;
use std::fmt;

use crate::coeffs::{CoeffError, Field};

use super::element::Element;
use super::monomial::{Generator, Monomial};

/// Polynomial in commuting variables `t^i_j` with coefficients in `F`.
/// Monomials are stored as sorted generator sequences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutativePoly<F> {
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> CommutativePoly<F> {
    pub fn zero() -> Self {
        CommutativePoly { terms: BTreeMap::new() }
    }

    pub fn variable(g: Generator) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::new(vec![g]), F::one());
        CommutativePoly { terms }
    }

    pub fn constant(c: F) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::unit(), c);
        p
    }

    pub(crate) fn specialize(x: &Element<F>, q0: &F) -> Result<Self, CoeffError> {
        let mut p = Self::zero();
        for (m, c) in x.terms() {
            p.add_term(m.clone(), c.specialize(q0)?);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(F::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mut v = ma.factors().to_vec();
                v.extend_from_slice(mb.factors());
                v.sort();
                out.add_term(Monomial::new(v), ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::zero();
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x.clone() * c.clone());
        }
        out
    }
}

impl<F: Field> fmt::Display for CommutativePoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}) * {m}")?;
        }
        Ok(())
    }
}
