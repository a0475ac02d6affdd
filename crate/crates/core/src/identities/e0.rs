//! Membership certificates for commutators with generators outside `E_0`.
//!
//! `E_0(K, L)` is generated by the `t^k_l` with `k ∈ K` or `l ∈ L`. For an
//! outside generator `t' = t^{k'}_{l'}` and a word `w_1 ⋯ w_p`,
//!
//! `[t', w_1 ⋯ w_p] = Σ_i w_1 ⋯ w_{i-1} [t', w_i] w_{i+1} ⋯ w_p`,
//!
//! and each elementary commutator `[t', w_i]` is either zero or a scalar
//! multiple of a product of two generators. The expansion certifies
//! membership when every such product has both factors in `E_0`.

use crate::algebra::{Element, Generator, QMatrixAlgebra};
use crate::coeffs::{Field, Laurent};
use crate::minors::{minor_words, proportionality, MinorId};

use super::{Configuration, IdentityCheckResult, IdentityError, IdentityName, Placement};

/// An element written as a linear combination of words in the generators of
/// `E_0` (not a normal form: normal-form monomials need not factor through
/// `E_0` generators).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E0Expr<F> {
    minor: MinorId,
    words: Vec<(Laurent<F>, Vec<Generator>)>,
}

pub(crate) fn in_e0(minor: &MinorId, g: Generator) -> bool {
    minor.rows.contains(g.row) || minor.cols.contains(g.col)
}

impl<F: Field> E0Expr<F> {
    pub fn from_words(minor: &MinorId, words: Vec<(Laurent<F>, Vec<Generator>)>) -> Result<Self, IdentityError> {
        for (_, w) in &words {
            if let Some(g) = w.iter().find(|g| !in_e0(minor, **g)) {
                return Err(IdentityError::NotInE0(g.to_string()));
            }
        }
        Ok(E0Expr {
            minor: minor.clone(),
            words,
        })
    }

    /// Reads a normal form monomial by monomial; accepted when every
    /// generator occurring is an `E_0` generator.
    pub fn from_element(minor: &MinorId, e: &Element<F>) -> Result<Self, IdentityError> {
        let words = e.terms().map(|(m, c)| (c.clone(), m.factors().to_vec())).collect();
        Self::from_words(minor, words)
    }

    /// The minor itself, as its permutation-sum words.
    pub fn minor_expansion(minor: &MinorId) -> Self {
        E0Expr {
            minor: minor.clone(),
            words: minor_words(minor),
        }
    }

    pub fn words(&self) -> &[(Laurent<F>, Vec<Generator>)] {
        &self.words
    }

    pub fn minor(&self) -> &MinorId {
        &self.minor
    }

    pub fn evaluate(&self, alg: &QMatrixAlgebra<F>) -> Result<Element<F>, IdentityError> {
        Ok(alg.normal_form(self.words.clone())?)
    }
}

/// Value of an elementary commutator `[t', w] = t' w - w t'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Elementary<F> {
    Zero,
    /// `coeff * x * y`
    Product {
        coeff: Laurent<F>,
        x: Generator,
        y: Generator,
    },
}

/// Computes `[outside, w]` and writes it as a scalar multiple of a product of
/// two generators.
pub fn elementary_commutator<F: Field>(
    alg: &QMatrixAlgebra<F>,
    outside: Generator,
    w: Generator,
) -> Result<Elementary<F>, IdentityError> {
    let a = alg.gen(outside.row as usize, outside.col as usize)?;
    let b = alg.gen(w.row as usize, w.col as usize)?;
    let c = alg.commutator(&a, &b)?;
    if c.is_zero() {
        return Ok(Elementary::Zero);
    }
    let diag1 = Generator::new(outside.row, w.col);
    let diag2 = Generator::new(w.row, outside.col);
    for (x, y) in [(diag1, diag2), (diag2, diag1), (w, outside), (outside, w)] {
        let xy = alg.multiply(
            &alg.gen(x.row as usize, x.col as usize)?,
            &alg.gen(y.row as usize, y.col as usize)?,
        )?;
        if let Some(coeff) = proportionality(&c, &xy) {
            return Ok(Elementary::Product { coeff, x, y });
        }
    }
    unreachable!("a commutator of two generators is proportional to a product of two generators")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E0Leaf<F> {
    pub word: usize,
    pub position: usize,
    pub generator: Generator,
    pub value: Elementary<F>,
    pub admissible: bool,
}

/// The expression tree of a commutator expansion: one leaf per elementary
/// commutator, and the resulting combination of `E_0` words built from the
/// admissible leaves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E0Certificate<F> {
    pub outside: Generator,
    pub leaves: Vec<E0Leaf<F>>,
    pub expression: Vec<(Laurent<F>, Vec<Generator>)>,
    /// Words contributed by inadmissible leaves.
    pub rejected: Vec<(Laurent<F>, Vec<Generator>)>,
}

impl<F: Field> E0Certificate<F> {
    /// Normal form of the certified part.
    pub fn re_expand(&self, alg: &QMatrixAlgebra<F>) -> Result<Element<F>, IdentityError> {
        Ok(alg.normal_form(self.expression.clone())?)
    }

    pub fn is_complete(&self) -> bool {
        self.leaves.iter().all(|l| l.admissible)
    }
}

/// Leibniz expansion of `[outside, e]` over the words of `e`.
pub fn expand_commutator<F: Field>(
    alg: &QMatrixAlgebra<F>,
    outside: Generator,
    e: &E0Expr<F>,
) -> Result<E0Certificate<F>, IdentityError> {
    let mut leaves = Vec::new();
    let mut expression = Vec::new();
    let mut rejected = Vec::new();
    for (wi, (c, word)) in e.words.iter().enumerate() {
        for (pos, &g) in word.iter().enumerate() {
            let value = elementary_commutator(alg, outside, g)?;
            let admissible = match &value {
                Elementary::Zero => true,
                Elementary::Product { coeff, x, y } => {
                    let mut w = word[..pos].to_vec();
                    w.push(*x);
                    w.push(*y);
                    w.extend_from_slice(&word[pos + 1..]);
                    let ok = in_e0(&e.minor, *x) && in_e0(&e.minor, *y);
                    if ok {
                        expression.push((c * coeff, w));
                    } else {
                        rejected.push((c * coeff, w));
                    }
                    ok
                }
            };
            leaves.push(E0Leaf {
                word: wi,
                position: pos,
                generator: g,
                value,
                admissible,
            });
        }
    }
    Ok(E0Certificate {
        outside,
        leaves,
        expression,
        rejected,
    })
}

/// For `k ∉ K`, `l ∉ L`: expands `t^k_l e - e t^k_l` and checks that every
/// elementary commutator lands in `E_0`. The residual is the part of the
/// commutator not accounted for by admissible leaves.
pub fn check_e0_membership<F: Field>(
    alg: &QMatrixAlgebra<F>,
    minor: &MinorId,
    k: u8,
    l: u8,
    e: &E0Expr<F>,
) -> Result<(IdentityCheckResult<F>, Option<E0Certificate<F>>), IdentityError> {
    let config = Configuration::new(alg.n(), minor).with_generator(k, l);
    if Placement::of(minor, Generator::new(k, l)) != Placement::Outside {
        return Ok((
            IdentityCheckResult::not_applicable(IdentityName::E0Membership, config, "needs k not in K and l not in L"),
            None,
        ));
    }
    if &e.minor != minor {
        return Err(IdentityError::NotInE0(format!("expression built for {}", e.minor)));
    }
    let outside = Generator::new(k, l);
    let cert = expand_commutator(alg, outside, e)?;
    let direct = alg.commutator(&alg.gen(k as usize, l as usize)?, &e.evaluate(alg)?)?;
    let residual = &direct - &cert.re_expand(alg)?;
    let mut res = IdentityCheckResult::from_residual(IdentityName::E0Membership, config, residual);
    if !cert.is_complete() {
        let bad = cert.leaves.iter().filter(|l| !l.admissible).count();
        res = res.with_note(format!("{bad} elementary commutators leave E_0"));
    }
    Ok((res, Some(cert)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identities::CheckStatus;
    use crate::QAlgebra;

    fn minor(r: &[u8], c: &[u8]) -> MinorId {
        MinorId::from_labels(r, c).unwrap()
    }

    #[test]
    fn single_generator_has_one_leaf() {
        let a = QAlgebra::new(3).unwrap();
        let m = minor(&[1], &[1]);
        let e = E0Expr::from_element(&m, &a.t(1, 1)).unwrap();
        let (res, cert) = check_e0_membership(&a, &m, 3, 3, &e).unwrap();
        let cert = cert.unwrap();
        assert_eq!(cert.leaves.len(), 1);
        assert!(res.is_verified());
    }

    #[test]
    fn single_generator_sharing_only_a_column_leaves_e0() {
        // [t33, t21] is a multiple of t31 t23, and t23 is not an E_0 generator
        let a = QAlgebra::new(3).unwrap();
        let m = minor(&[1], &[1]);
        let e = E0Expr::from_element(&m, &a.t(2, 1)).unwrap();
        let (res, cert) = check_e0_membership(&a, &m, 3, 3, &e).unwrap();
        assert_eq!(res.status, CheckStatus::Failed);
        let cert = cert.unwrap();
        assert_eq!(cert.leaves.len(), 1);
        match &cert.leaves[0].value {
            Elementary::Product { x, y, .. } => {
                assert_eq!((*x, *y), (Generator::new(3, 1), Generator::new(2, 3)));
            }
            Elementary::Zero => panic!("expected a nonzero commutator"),
        }
    }

    #[test]
    fn unit_commutes() {
        let a = QAlgebra::new(2).unwrap();
        let m = minor(&[1], &[1]);
        let e = E0Expr::from_element(&m, &a.one()).unwrap();
        let (res, cert) = check_e0_membership(&a, &m, 2, 2, &e).unwrap();
        assert!(res.is_verified());
        assert!(cert.unwrap().leaves.is_empty());
    }

    #[test]
    fn minor_commutator_is_certified() {
        for n in 2..=4u8 {
            let a = QAlgebra::new(n as usize).unwrap();
            for m in MinorId::all(n, 1..n as usize) {
                let e = E0Expr::minor_expansion(&m);
                for k in 1..=n {
                    for l in 1..=n {
                        let (res, cert) = check_e0_membership(&a, &m, k, l, &e).unwrap();
                        if res.status != CheckStatus::NotApplicable {
                            assert!(res.is_verified(), "{m} t[{k},{l}]");
                            assert!(cert.unwrap().is_complete());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn words_leaving_e0_are_caught() {
        let a = QAlgebra::new(3).unwrap();
        let m = minor(&[1], &[1]);
        let e = E0Expr::from_element(&m, &a.multiply(&a.t(1, 2), &a.t(2, 1)).unwrap()).unwrap();
        let (res, cert) = check_e0_membership(&a, &m, 3, 3, &e).unwrap();
        assert_eq!(res.status, CheckStatus::Failed);
        let cert = cert.unwrap();
        assert!(!cert.is_complete());
        let direct = a.commutator(&a.t(3, 3), &e.evaluate(&a).unwrap()).unwrap();
        let mut all = cert.expression.clone();
        all.extend(cert.rejected.clone());
        assert_eq!(a.normal_form(all).unwrap(), direct);
    }

    #[test]
    fn non_e0_input_rejected() {
        let a = QAlgebra::new(2).unwrap();
        let m = minor(&[1], &[1]);
        assert!(E0Expr::from_element(&m, &a.t(2, 2)).is_err());
    }
}
