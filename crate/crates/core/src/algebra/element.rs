use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::coeffs::{Field, Laurent};

use super::monomial::{Generator, Monomial, MultiDegree};

/// Finite linear combination of normal monomials with Laurent coefficients.
///
/// Every element remembers the matrix size `n` of the algebra it lives in;
/// additive operations between different sizes panic, multiplicative ones go
/// through [`QMatrixAlgebra`](super::QMatrixAlgebra) and are rejected with an
/// error.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element<F> {
    n: u8,
    terms: BTreeMap<Monomial, Laurent<F>>,
}

/// Result of [`Element::grading`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Grading {
    Zero,
    Homogeneous(MultiDegree),
    Inhomogeneous,
}

impl<F: Field> Element<F> {
    pub fn zero(n: u8) -> Self {
        Element {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: u8) -> Self {
        Self::scalar(n, Laurent::one())
    }

    pub fn scalar(n: u8, c: Laurent<F>) -> Self {
        Self::from_monomial(n, Monomial::unit(), c)
    }

    /// Caller guarantees `mono` is normal-ordered.
    pub fn from_monomial(n: u8, mono: Monomial, c: Laurent<F>) -> Self {
        debug_assert!(mono.is_normal());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mono, c);
        }
        Element { n, terms }
    }

    pub fn generator(n: u8, g: Generator) -> Self {
        Self::from_monomial(n, Monomial::new(vec![g]), Laurent::one())
    }

    /// Build from normal monomials, summing duplicates.
    pub(crate) fn from_normal_terms<I>(n: u8, iter: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Laurent<F>)>,
    {
        let mut e = Self::zero(n);
        for (m, c) in iter {
            e.add_term(m, &c);
        }
        e
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Laurent<F>)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Laurent<F> {
        self.terms.get(m).cloned().unwrap_or_else(Laurent::zero)
    }

    /// Maximal monomial degree (0 for scalars and for zero).
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// `Some(c)` when the element is the scalar `c`.
    pub fn as_scalar(&self) -> Option<Laurent<F>> {
        match self.terms.len() {
            0 => Some(Laurent::zero()),
            1 => self.terms.get(&Monomial::unit()).cloned(),
            _ => None,
        }
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &Laurent<F>) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub(crate) fn add_scaled(&mut self, other: &Element<F>, c: &Laurent<F>) {
        assert_eq!(self.n, other.n, "elements of different algebras");
        if c.is_zero() {
            return;
        }
        for (m, x) in &other.terms {
            self.add_term(m.clone(), &(x * c));
        }
    }

    pub fn scale(&self, c: &Laurent<F>) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        Element {
            n: self.n,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn grading(&self) -> Grading {
        let mut iter = self.terms.keys().map(|m| m.multidegree(self.n));
        let Some(first) = iter.next() else {
            return Grading::Zero;
        };
        if iter.all(|md| md == first) {
            Grading::Homogeneous(first)
        } else {
            Grading::Inhomogeneous
        }
    }

    /// Split into homogeneous components, ordered by multidegree.
    pub fn homogeneous_components(&self) -> BTreeMap<MultiDegree, Element<F>> {
        let mut out: BTreeMap<MultiDegree, Element<F>> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.multidegree(self.n))
                .or_insert_with(|| Element::zero(self.n))
                .add_term(m.clone(), c);
        }
        out
    }

    /// Apply `f` to every coefficient, dropping zeros.
    pub fn map_coefficients(&self, mut f: impl FnMut(&Laurent<F>) -> Laurent<F>) -> Self {
        Self::from_normal_terms(self.n, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }
}

impl<F: Field> Add for &Element<F> {
    type Output = Element<F>;
    fn add(self, rhs: &Element<F>) -> Element<F> {
        let mut out = self.clone();
        out.add_scaled(rhs, &Laurent::one());
        out
    }
}

impl<F: Field> Sub for &Element<F> {
    type Output = Element<F>;
    fn sub(self, rhs: &Element<F>) -> Element<F> {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Laurent::one());
        out
    }
}

impl<F: Field> Neg for &Element<F> {
    type Output = Element<F>;
    fn neg(self) -> Element<F> {
        self.scale(&-Laurent::one())
    }
}

impl<F: Field> Add for Element<F> {
    type Output = Element<F>;
    fn add(self, rhs: Element<F>) -> Element<F> {
        &self + &rhs
    }
}

impl<F: Field> Sub for Element<F> {
    type Output = Element<F>;
    fn sub(self, rhs: Element<F>) -> Element<F> {
        &self - &rhs
    }
}

/// Canonical text: `(<coefficient>) * t[i,j] t[k,l] + ...`, monomials in
/// lexicographic order, the unit monomial written as a bare `(<coefficient>)`.
impl<F: Field> fmt::Display for Element<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if m.is_unit() {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c}) * {m}")?;
            }
        }
        Ok(())
    }
}
