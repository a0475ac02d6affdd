//! Laurent polynomials in the deformation parameter `q`.
//!
//! Terms are kept sorted by ascending exponent with zero coefficients pruned,
//! so structural equality is mathematical equality.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_traits::{One, Zero};

use super::field::Field;
use super::CoeffError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Laurent<F> {
    terms: Vec<(i32, F)>,
}

impl<F: Field> Laurent<F> {
    pub fn zero() -> Self {
        Laurent { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(F::from_int(c))
    }

    /// `c * q^exp`
    pub fn monomial(c: F, exp: i32) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Laurent { terms: vec![(exp, c)] }
        }
    }

    /// `q^exp`
    pub fn q_pow(exp: i32) -> Self {
        Self::monomial(F::one(), exp)
    }

    pub fn q() -> Self {
        Self::q_pow(1)
    }

    /// `q - q^-1`
    pub fn q_minus_q_inv() -> Self {
        Laurent {
            terms: vec![(-1, -F::one()), (1, F::one())],
        }
    }

    /// Build from arbitrary (exponent, coefficient) pairs; duplicates are summed.
    pub fn from_terms<I: IntoIterator<Item = (i32, F)>>(iter: I) -> Self {
        let mut terms: Vec<(i32, F)> = iter.into_iter().collect();
        terms.sort_by_key(|(e, _)| *e);
        let mut out: Vec<(i32, F)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc = lc.clone() + c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Laurent { terms: out }
    }

    pub fn terms(&self) -> &[(i32, F)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn low_exp(&self) -> Option<i32> {
        self.terms.first().map(|(e, _)| *e)
    }

    pub fn high_exp(&self) -> Option<i32> {
        self.terms.last().map(|(e, _)| *e)
    }

    /// The leading (highest-exponent) coefficient.
    pub fn leading_coeff(&self) -> Option<&F> {
        self.terms.last().map(|(_, c)| c)
    }

    /// Units of the Laurent ring are exactly the nonzero single terms.
    pub fn as_unit(&self) -> Option<(&F, i32)> {
        match self.terms.as_slice() {
            [(e, c)] => Some((c, *e)),
            _ => None,
        }
    }

    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    /// Inverse of a unit `c q^e`; `None` for non-units.
    pub fn unit_inverse(&self) -> Option<Self> {
        self.as_unit().map(|(c, e)| Self::monomial(F::one() / c.clone(), -e))
    }

    /// Exact quotient by a unit.
    pub fn div_unit(&self, unit: &Self) -> Option<Self> {
        unit.unit_inverse().map(|inv| self * &inv)
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i32) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Laurent {
            terms: self.terms.iter().map(|(e, x)| (*e, x.clone() * c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Signed power, defined for units only when `k < 0`.
    pub fn powi(&self, k: i32) -> Option<Self> {
        if k >= 0 {
            Some(self.pow(k as u32))
        } else {
            self.unit_inverse().map(|inv| inv.pow(k.unsigned_abs()))
        }
    }

    /// Evaluate at `q = q0`.
    pub fn specialize(&self, q0: &F) -> Result<F, CoeffError> {
        if q0.is_zero() {
            return Err(CoeffError::ZeroSpecialization);
        }
        let inv = F::one() / q0.clone();
        let mut acc = F::zero();
        for (e, c) in &self.terms {
            let base = if *e >= 0 { q0 } else { &inv };
            let mut p = F::one();
            for _ in 0..e.unsigned_abs() {
                p = p * base.clone();
            }
            acc = acc + c.clone() * p;
        }
        Ok(acc)
    }
}

impl<F: Field> Default for Laurent<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> From<F> for Laurent<F> {
    fn from(c: F) -> Self {
        Self::constant(c)
    }
}

fn merge<F: Field>(a: &[(i32, F)], b: &[(i32, F)], negate_b: bool) -> Vec<(i32, F)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let sign = |c: &F| if negate_b { -c.clone() } else { c.clone() };
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push((b[j].0, sign(&b[j].1)));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = a[i].1.clone() + sign(&b[j].1);
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend(b[j..].iter().map(|(e, c)| (*e, sign(c))));
    out
}

impl<F: Field> Add for &Laurent<F> {
    type Output = Laurent<F>;
    fn add(self, rhs: &Laurent<F>) -> Laurent<F> {
        Laurent {
            terms: merge(&self.terms, &rhs.terms, false),
        }
    }
}

impl<F: Field> Sub for &Laurent<F> {
    type Output = Laurent<F>;
    fn sub(self, rhs: &Laurent<F>) -> Laurent<F> {
        Laurent {
            terms: merge(&self.terms, &rhs.terms, true),
        }
    }
}

impl<F: Field> Mul for &Laurent<F> {
    type Output = Laurent<F>;
    fn mul(self, rhs: &Laurent<F>) -> Laurent<F> {
        if self.is_zero() || rhs.is_zero() {
            return Laurent::zero();
        }
        if let Some((c, e)) = rhs.as_unit() {
            return self.scale(c).shift(e);
        }
        if let Some((c, e)) = self.as_unit() {
            return rhs.scale(c).shift(e);
        }
        let mut prods = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                prods.push((ea + eb, ca.clone() * cb.clone()));
            }
        }
        Laurent::from_terms(prods)
    }
}

impl<F: Field> Neg for &Laurent<F> {
    type Output = Laurent<F>;
    fn neg(self) -> Laurent<F> {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl<F: Field> Neg for Laurent<F> {
    type Output = Laurent<F>;
    fn neg(self) -> Laurent<F> {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<F: Field> $tr for Laurent<F> {
            type Output = Laurent<F>;
            fn $m(self, rhs: Laurent<F>) -> Laurent<F> {
                (&self).$m(&rhs)
            }
        }
        impl<F: Field> $tr<&Laurent<F>> for Laurent<F> {
            type Output = Laurent<F>;
            fn $m(self, rhs: &Laurent<F>) -> Laurent<F> {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<F: Field> AddAssign<&Laurent<F>> for Laurent<F> {
    fn add_assign(&mut self, rhs: &Laurent<F>) {
        self.terms = merge(&self.terms, &rhs.terms, false);
    }
}

impl<F: Field> SubAssign<&Laurent<F>> for Laurent<F> {
    fn sub_assign(&mut self, rhs: &Laurent<F>) {
        self.terms = merge(&self.terms, &rhs.terms, true);
    }
}

fn fmt_q_power(f: &mut fmt::Formatter<'_>, exp: i32) -> fmt::Result {
    if exp == 1 {
        write!(f, "q")
    } else {
        write!(f, "q^{exp}")
    }
}

/// Ascending exponent order, e.g. `-q^-1 + q` or `3/2*q^2`.
impl<F: Field> fmt::Display for Laurent<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if *e == 0 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                fmt_q_power(f, *e)?;
            } else {
                write!(f, "{a}*")?;
                fmt_q_power(f, *e)?;
            }
        }
        Ok(())
    }
}

impl<F: Field> FromStr for Laurent<F> {
    type Err = CoeffError;

    /// Parses the rendered form back exactly: signed terms `c`, `q^e`,
    /// `c*q^e` joined by `+`/`-`.
    fn from_str(s: &str) -> Result<Self, CoeffError> {
        let bad = || CoeffError::Parse(s.to_string());
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(bad());
        }
        let bytes = text.as_bytes();
        let mut terms = Vec::new();
        let mut pos = 0;
        while pos < bytes.len() {
            let mut negative = false;
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                negative = bytes[pos] == b'-';
                pos += 1;
            } else if pos != 0 {
                return Err(bad());
            }
            // term ends at the next sign that is not an exponent sign
            let start = pos;
            while pos < bytes.len() {
                let b = bytes[pos];
                if (b == b'+' || b == b'-') && pos > start && bytes[pos - 1] != b'^' {
                    break;
                }
                pos += 1;
            }
            let term = &text[start..pos];
            let (coeff_txt, q_txt) = match term.find('q') {
                Some(i) => {
                    let c = term[..i].strip_suffix('*').unwrap_or(&term[..i]);
                    if i > 0 && !term[..i].ends_with('*') {
                        return Err(bad());
                    }
                    (c, Some(&term[i + 1..]))
                }
                None => (term, None),
            };
            let mut c = if coeff_txt.is_empty() {
                if q_txt.is_none() {
                    return Err(bad());
                }
                F::one()
            } else {
                F::parse_literal(coeff_txt).ok_or_else(bad)?
            };
            if negative {
                c = -c;
            }
            let e = match q_txt {
                None => 0,
                Some("") => 1,
                Some(rest) => rest
                    .strip_prefix('^')
                    .and_then(|x| x.parse::<i32>().ok())
                    .ok_or_else(bad)?,
            };
            terms.push((e, c));
        }
        Ok(Laurent::from_terms(terms))
    }
}

impl<F: Field> Zero for Laurent<F> {
    fn zero() -> Self {
        Laurent::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<F: Field> One for Laurent<F> {
    fn one() -> Self {
        Laurent::one()
    }
}
