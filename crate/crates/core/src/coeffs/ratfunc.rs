//! Rational functions in `q`: the solution field of the witness solver.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::field::Field;
use super::laurent::Laurent;
use super::CoeffError;

/// Dense univariate polynomial, index = degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Poly<F>(pub(crate) Vec<F>);

impl<F: Field> Poly<F> {
    fn trim(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub(crate) fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    /// Laurent → (polynomial, shift) with `l = q^shift * poly` and `poly(0) != 0`.
    pub(crate) fn from_laurent(l: &Laurent<F>) -> (Self, i32) {
        let Some(low) = l.low_exp() else {
            return (Poly(Vec::new()), 0);
        };
        let high = l.high_exp().unwrap();
        let mut coeffs = vec![F::zero(); (high - low + 1) as usize];
        for (e, c) in l.terms() {
            coeffs[(e - low) as usize] = c.clone();
        }
        (Poly(coeffs), low)
    }

    pub(crate) fn to_laurent(&self, shift: i32) -> Laurent<F> {
        Laurent::from_terms(self.0.iter().enumerate().map(|(i, c)| (i as i32 + shift, c.clone())))
    }

    fn monic(self) -> Self {
        match self.0.last().cloned() {
            Some(lc) if !lc.is_one() => Poly(self.0.into_iter().map(|c| c / lc.clone()).collect()),
            _ => self,
        }
    }

    /// Euclidean division; `divisor` must be nonzero.
    pub(crate) fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let mut rem = self.0.clone();
        let dl = divisor.0.len();
        if rem.len() < dl {
            return (Poly(Vec::new()), self.clone());
        }
        let lc = divisor.0.last().unwrap().clone();
        let mut quot = vec![F::zero(); rem.len() - dl + 1];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dl - 1].clone() / lc.clone();
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.0.iter().enumerate() {
                rem[i + j] = rem[i + j].clone() - c.clone() * d.clone();
            }
            quot[i] = c;
        }
        (Poly(quot).trim(), Poly(rem).trim())
    }

    /// Monic gcd.
    pub(crate) fn gcd(a: &Self, b: &Self) -> Self {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y);
            x = y;
            y = r;
        }
        x.monic()
    }

    fn mul(a: &Self, b: &Self) -> Self {
        if a.is_zero() || b.is_zero() {
            return Poly(Vec::new());
        }
        let mut out = vec![F::zero(); a.0.len() + b.0.len() - 1];
        for (i, x) in a.0.iter().enumerate() {
            for (j, y) in b.0.iter().enumerate() {
                out[i + j] = out[i + j].clone() + x.clone() * y.clone();
            }
        }
        Poly(out).trim()
    }

    pub(crate) fn derivative(&self) -> Self {
        Poly(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * F::from_int(i as i64))
                .collect(),
        )
        .trim()
    }
}

/// Quotient of two Laurent polynomials in canonical reduced form.
///
/// Canonical form: the denominator is a monic polynomial with nonzero
/// constant term, coprime to the numerator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc<F> {
    num: Laurent<F>,
    den: Laurent<F>,
}

impl<F: Field> RatFunc<F> {
    pub fn new(num: Laurent<F>, den: Laurent<F>) -> Result<Self, CoeffError> {
        if den.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    pub fn from_laurent(num: Laurent<F>) -> Self {
        RatFunc {
            num,
            den: Laurent::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_laurent(Laurent::zero())
    }

    pub fn one() -> Self {
        Self::from_laurent(Laurent::one())
    }

    pub fn numerator(&self) -> &Laurent<F> {
        &self.num
    }

    pub fn denominator(&self) -> &Laurent<F> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `Some` when the value is a Laurent polynomial.
    pub fn as_laurent(&self) -> Option<&Laurent<F>> {
        self.den.is_one().then_some(&self.num)
    }

    fn reduce(num: Laurent<F>, den: Laurent<F>) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (np, ns) = Poly::from_laurent(&num);
        let (dp, ds) = Poly::from_laurent(&den);
        let g = Poly::gcd(&np, &dp);
        let (np, _) = np.div_rem(&g);
        let (dp, _) = dp.div_rem(&g);
        let lc = dp.0.last().unwrap().clone();
        let np = Poly(np.0.into_iter().map(|c| c / lc.clone()).collect());
        let dp = dp.monic();
        RatFunc {
            num: np.to_laurent(ns - ds),
            den: dp.to_laurent(0),
        }
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, CoeffError> {
        if rhs.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(Self::reduce(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn specialize(&self, q0: &F) -> Result<F, CoeffError> {
        let d = self.den.specialize(q0)?;
        if d.is_zero() {
            return Err(CoeffError::PoleAtSpecialization);
        }
        Ok(self.num.specialize(q0)? / d)
    }
}

impl<F: Field> From<Laurent<F>> for RatFunc<F> {
    fn from(l: Laurent<F>) -> Self {
        Self::from_laurent(l)
    }
}

impl<F: Field> Add for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn add(self, rhs: &RatFunc<F>) -> RatFunc<F> {
        if self.den == rhs.den {
            return RatFunc::reduce(&self.num + &rhs.num, self.den.clone());
        }
        RatFunc::reduce(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl<F: Field> Sub for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn sub(self, rhs: &RatFunc<F>) -> RatFunc<F> {
        self + &(-rhs)
    }
}

impl<F: Field> Mul for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn mul(self, rhs: &RatFunc<F>) -> RatFunc<F> {
        RatFunc::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl<F: Field> Neg for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn neg(self) -> RatFunc<F> {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl<F: Field> fmt::Display for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// Monic least common multiple of canonical denominators (polynomials in `q`
/// with nonzero constant term).
pub fn denominator_lcm<F: Field>(dens: &[Laurent<F>]) -> Laurent<F> {
    let mut acc = Poly(vec![F::one()]);
    for d in dens {
        let (p, _) = Poly::from_laurent(d);
        if p.degree() == 0 {
            continue;
        }
        let g = Poly::gcd(&acc, &p);
        let (cofactor, _) = p.div_rem(&g);
        acc = Poly::mul(&acc, &cofactor);
    }
    acc.monic().to_laurent(0)
}

/// Pairwise coprime, squarefree, monic non-constant factors whose product has
/// the same roots as the product of `dens`; constant-term-free factors never
/// occur because canonical denominators are not divisible by `q`.
pub fn coprime_factor_basis<F: Field>(dens: &[Laurent<F>]) -> Vec<Laurent<F>> {
    let mut basis: Vec<Poly<F>> = Vec::new();
    for d in dens {
        let (p, _) = Poly::from_laurent(d);
        if p.degree() == 0 {
            continue;
        }
        // squarefree part
        let g = Poly::gcd(&p, &p.derivative());
        let (sf, _) = p.div_rem(&g);
        refine(&mut basis, sf.monic());
    }
    let mut out: Vec<Laurent<F>> = basis.into_iter().map(|p| p.to_laurent(0)).collect();
    out.sort_by(|a, b| {
        a.high_exp()
            .cmp(&b.high_exp())
            .then_with(|| a.to_string().cmp(&b.to_string()))
    });
    out
}

fn refine<F: Field>(basis: &mut Vec<Poly<F>>, p: Poly<F>) {
    let mut pending = vec![p];
    while let Some(mut p) = pending.pop() {
        if p.degree() == 0 {
            continue;
        }
        let mut split = None;
        for (i, b) in basis.iter().enumerate() {
            let g = Poly::gcd(b, &p);
            if g.degree() > 0 {
                split = Some((i, g));
                break;
            }
        }
        match split {
            None => basis.push(p),
            Some((i, g)) => {
                let b = basis.swap_remove(i);
                let (b_rest, _) = b.div_rem(&g);
                let (p_rest, _) = p.div_rem(&g);
                p = p_rest;
                pending.push(g.monic());
                pending.push(b_rest.monic());
                pending.push(p.monic());
            }
        }
    }
}

impl<F: Field> Zero for RatFunc<F> {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<F: Field> Add for RatFunc<F> {
    type Output = RatFunc<F>;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<F: Field> One for RatFunc<F> {
    fn one() -> Self {
        RatFunc::one()
    }
}

impl<F: Field> Mul for RatFunc<F> {
    type Output = RatFunc<F>;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{LaurentQ, QRational};

    fn lq(s: &str) -> LaurentQ {
        s.parse().unwrap()
    }

    fn rf(n: &str, d: &str) -> QRational {
        QRational::new(lq(n), lq(d)).unwrap()
    }

    #[test]
    fn inverse_of_deformation_factor() {
        let a = rf("1", "q - q^-1");
        let b = QRational::from(LaurentQ::q_minus_q_inv());
        assert_eq!(&a * &b, QRational::one());
    }

    #[test]
    fn exact_laurent_division() {
        let a = QRational::from(lq("1 - q^-2"));
        let b = QRational::from(lq("q^-1"));
        let c = a.checked_div(&b).unwrap();
        assert_eq!(c.as_laurent(), Some(&lq("q - q^-1")));
    }

    #[test]
    fn gcd_reduction() {
        let c = rf("q^2 - 1", "q - 1");
        assert_eq!(c.as_laurent(), Some(&lq("q + 1")));
    }

    #[test]
    fn division_by_zero_rejected() {
        assert!(QRational::new(lq("1"), LaurentQ::zero()).is_err());
        assert!(QRational::one().checked_div(&QRational::zero()).is_err());
    }

    #[test]
    fn canonical_denominator() {
        // (q)/(2q^2 + 2q^3) = (1/2) q^-1 / (1 + q)
        let c = rf("q", "2*q^2 + 2*q^3");
        assert_eq!(c.denominator(), &lq("1 + q"));
        assert_eq!(c.numerator(), &lq("1/2*q^-1"));
        let d = rf("3*q^-1", "6 + 6*q");
        assert_eq!(c, d);
    }

    #[test]
    fn factor_basis_is_coprime() {
        let dens = vec![lq("1 + 2*q + q^2"), lq("1 - q^2"), lq("1 + q^2")];
        let basis = coprime_factor_basis(&dens);
        assert_eq!(basis, vec![lq("-1 + q"), lq("1 + q"), lq("1 + q^2")]);
    }

    #[test]
    fn lcm_of_denominators() {
        assert_eq!(denominator_lcm(&[lq("1 + q"), lq("q^2 - 1")]), lq("-1 + q^2"));
        assert_eq!(denominator_lcm(&[lq("2 + 2*q"), lq("q^-1 - q")]), lq("-1 + q^2"));
        assert!(denominator_lcm::<crate::Rational>(&[]).is_one());
    }
}
