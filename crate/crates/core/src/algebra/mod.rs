//! The quantum matrix bialgebra `M_q(n)`: generators, the relation block as a
//! terminating rewrite system, and PBW normal forms.

mod classical;
mod element;
mod monomial;
mod rewrite;

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use thiserror::Error;

use crate::coeffs::{Field, Laurent};

pub use classical::CommutativePoly;
pub use element::{Element, Grading};
pub use monomial::{Generator, Monomial, MultiDegree};
pub use rewrite::{classify, reduce_words, rewrite_at, PairRule, ReductionOrder};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("matrix size must be between 1 and 255, got {0}")]
    BadSize(usize),
    #[error("generator t[{row},{col}] out of range for n = {n}")]
    GeneratorOutOfRange { row: usize, col: usize, n: u8 },
    #[error("elements from algebras of size {left} and {right} cannot be combined")]
    ContextMismatch { left: u8, right: u8 },
    #[error("product of degree {degree} exceeds the degree cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },
    #[error("cannot specialize at q = 0")]
    ZeroSpecialization,
}

impl AlgebraError {
    /// Whether the error comes from the algebra's degree cap.
    pub fn exceeds_degree_cap(&self) -> bool {
        matches!(self, AlgebraError::DegreeCapExceeded { .. })
    }
}

type Product<F> = Arc<Element<F>>;

/// The algebra `M_q(n)` over an exact field `F`.
///
/// Holds a memo table of `normal monomial * generator` products; the table is
/// behind a lock so a shared algebra can be used from several threads.
pub struct QMatrixAlgebra<F> {
    n: u8,
    max_degree: usize,
    memo: RwLock<HashMap<(Monomial, Generator), Product<F>>>,
}

impl<F: Field> std::fmt::Debug for QMatrixAlgebra<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("QMatrixAlgebra")
            .field("n", &self.n)
            .field("max_degree", &self.max_degree)
            .finish()
    }
}

impl<F: Field> QMatrixAlgebra<F> {
    pub fn new(n: usize) -> Result<Self, AlgebraError> {
        if n == 0 || n > u8::MAX as usize - 1 {
            return Err(AlgebraError::BadSize(n));
        }
        Ok(QMatrixAlgebra {
            n: n as u8,
            max_degree: usize::MAX,
            memo: RwLock::new(HashMap::new()),
        })
    }

    /// Reject any product whose degree would exceed `cap`.
    pub fn with_max_degree(mut self, cap: usize) -> Self {
        self.max_degree = cap;
        self
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> {
        let n = self.n;
        (1..=n).flat_map(move |r| (1..=n).map(move |c| Generator::new(r, c)))
    }

    pub fn gen(&self, row: usize, col: usize) -> Result<Element<F>, AlgebraError> {
        let n = self.n as usize;
        if !(1..=n).contains(&row) || !(1..=n).contains(&col) {
            return Err(AlgebraError::GeneratorOutOfRange { row, col, n: self.n });
        }
        Ok(Element::generator(self.n, Generator::new(row as u8, col as u8)))
    }

    /// Generator element; panics on out-of-range labels.
    pub fn t(&self, row: usize, col: usize) -> Element<F> {
        self.gen(row, col).expect("generator label in range")
    }

    pub fn one(&self) -> Element<F> {
        Element::one(self.n)
    }

    pub fn zero(&self) -> Element<F> {
        Element::zero(self.n)
    }

    pub fn scalar(&self, c: Laurent<F>) -> Element<F> {
        Element::scalar(self.n, c)
    }

    fn check(&self, x: &Element<F>) -> Result<(), AlgebraError> {
        if x.n() != self.n {
            return Err(AlgebraError::ContextMismatch {
                left: self.n,
                right: x.n(),
            });
        }
        Ok(())
    }

    /// Normal form of `mono * g` for a normal monomial `mono`.
    fn mono_times_gen(&self, mono: &Monomial, g: Generator) -> Product<F> {
        let factors = mono.factors();
        match factors.last() {
            Some(&last) if last > g => {}
            _ => {
                let mut v = factors.to_vec();
                v.push(g);
                return Arc::new(Element::from_monomial(self.n, Monomial::new(v), Laurent::one()));
            }
        }
        let key = (mono.clone(), g);
        if let Some(hit) = self.memo.read().unwrap().get(&key) {
            return hit.clone();
        }
        let x = *factors.last().unwrap();
        let prefix = Monomial::new(factors[..factors.len() - 1].to_vec());
        let swapped = self.elem_times_gen(&self.mono_times_gen(&prefix, g), x);
        let result = match classify(x, g) {
            PairRule::QSwap => swapped.scale(&Laurent::q_pow(-1)),
            PairRule::Swap => swapped,
            PairRule::Cross { first, second } => {
                let mut acc = swapped;
                let corr = self.elem_times_gen(&self.mono_times_gen(&prefix, first), second);
                acc.add_scaled(&corr, &-Laurent::q_minus_q_inv());
                acc
            }
        };
        let result = Arc::new(result);
        self.memo.write().unwrap().insert(key, result.clone());
        result
    }

    fn elem_times_gen(&self, e: &Element<F>, g: Generator) -> Element<F> {
        let mut out = Element::zero(self.n);
        for (m, c) in e.terms() {
            out.add_scaled(&self.mono_times_gen(m, g), c);
        }
        out
    }

    fn mono_times_mono(&self, a: &Monomial, b: &Monomial) -> Element<F> {
        let mut acc = Element::from_monomial(self.n, a.clone(), Laurent::one());
        for &g in b.factors() {
            acc = self.elem_times_gen(&acc, g);
        }
        acc
    }

    /// The product `a * b` in normal form.
    pub fn multiply(&self, a: &Element<F>, b: &Element<F>) -> Result<Element<F>, AlgebraError> {
        self.check(a)?;
        self.check(b)?;
        let degree = a.degree() + b.degree();
        if degree > self.max_degree && !a.is_zero() && !b.is_zero() {
            return Err(AlgebraError::DegreeCapExceeded {
                degree,
                cap: self.max_degree,
            });
        }
        let mut out = Element::zero(self.n);
        for (mb, cb) in b.terms() {
            for (ma, ca) in a.terms() {
                out.add_scaled(&self.mono_times_mono(ma, mb), &(ca * cb));
            }
        }
        Ok(out)
    }

    /// Product of a sequence of elements, left to right.
    pub fn product<'a, I>(&self, factors: I) -> Result<Element<F>, AlgebraError>
    where
        I: IntoIterator<Item = &'a Element<F>>,
    {
        let mut acc = self.one();
        for f in factors {
            acc = self.multiply(&acc, f)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, x: &Element<F>, k: u32) -> Result<Element<F>, AlgebraError> {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.multiply(&acc, x)?;
        }
        Ok(acc)
    }

    /// `a b - b a`.
    pub fn commutator(&self, a: &Element<F>, b: &Element<F>) -> Result<Element<F>, AlgebraError> {
        Ok(&self.multiply(a, b)? - &self.multiply(b, a)?)
    }

    /// Normal form of arbitrary (coefficient, word) pairs by leftmost
    /// reduction of out-of-order adjacent pairs.
    pub fn normal_form(&self, words: Vec<(Laurent<F>, Vec<Generator>)>) -> Result<Element<F>, AlgebraError> {
        self.normal_form_with(words, ReductionOrder::Leftmost)
    }

    pub fn normal_form_with(
        &self,
        words: Vec<(Laurent<F>, Vec<Generator>)>,
        order: ReductionOrder,
    ) -> Result<Element<F>, AlgebraError> {
        for (_, w) in &words {
            if let Some(g) = w.iter().find(|g| !g.in_range(self.n)) {
                return Err(AlgebraError::GeneratorOutOfRange {
                    row: g.row as usize,
                    col: g.col as usize,
                    n: self.n,
                });
            }
            if w.len() > self.max_degree {
                return Err(AlgebraError::DegreeCapExceeded {
                    degree: w.len(),
                    cap: self.max_degree,
                });
            }
        }
        Ok(reduce_words(self.n, words, order))
    }

    /// Image under the algebra automorphism `t^i_j -> t^j_i`.
    pub fn transpose(&self, x: &Element<F>) -> Result<Element<F>, AlgebraError> {
        self.check(x)?;
        self.map_words(x, |w| w.iter().map(|g| g.transpose()).collect())
    }

    /// Image under the anti-automorphism `t^i_j -> t^{n+1-i}_{n+1-j}`
    /// (reverses the order of products).
    pub fn reverse(&self, x: &Element<F>) -> Result<Element<F>, AlgebraError> {
        self.check(x)?;
        let n = self.n;
        self.map_words(x, |w| w.iter().rev().map(|g| g.reverse(n)).collect())
    }

    fn map_words(
        &self,
        x: &Element<F>,
        f: impl Fn(&[Generator]) -> Vec<Generator>,
    ) -> Result<Element<F>, AlgebraError> {
        let mut out = Element::zero(self.n);
        for (m, c) in x.terms() {
            let word = f(m.factors());
            let mut acc = Element::one(self.n);
            for g in word {
                acc = self.elem_times_gen(&acc, g);
            }
            out.add_scaled(&acc, c);
        }
        Ok(out)
    }

    /// Specialize the coefficients at `q = q0`, reading monomials as
    /// commutative ones. At `q0 = 1` this is the classical-limit homomorphism.
    pub fn specialize_q(&self, x: &Element<F>, q0: &F) -> Result<CommutativePoly<F>, AlgebraError> {
        self.check(x)?;
        CommutativePoly::specialize(x, q0).map_err(|_| AlgebraError::ZeroSpecialization)
    }
}
