mod common;

use proptest::prelude::*;
use qmb_core::algebra::{reduce_words, CommutativePoly, Generator, ReductionOrder};
use qmb_core::ore::enumerate_basis;
use qmb_core::{LaurentQ, Monomial, QAlgebra, QElement, Rational};

type Words = Vec<(LaurentQ, Vec<Generator>)>;

fn words(n: u8, terms: usize, len: usize) -> impl Strategy<Value = Words> {
    let coeff = (-3i64..=3, -2i32..=2)
        .prop_filter("nonzero", |(c, _)| *c != 0)
        .prop_map(|(c, e)| LaurentQ::monomial(Rational::from_integer(c.into()), e));
    let word = prop::collection::vec((1..=n, 1..=n).prop_map(|(r, c)| Generator::new(r, c)), 0..=len);
    prop::collection::vec((coeff, word), 1..=terms)
}

fn nf(a: &QAlgebra, w: &Words) -> QElement {
    a.normal_form(w.clone()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(x in words(3, 3, 2), y in words(3, 3, 2), z in words(3, 2, 2)) {
        let a = QAlgebra::new(3).unwrap();
        let (x, y, z) = (nf(&a, &x), nf(&a, &y), nf(&a, &z));
        let m = |u: &QElement, v: &QElement| a.multiply(u, v).unwrap();
        prop_assert_eq!(m(&m(&x, &y), &z), m(&x, &m(&y, &z)));
        prop_assert_eq!(m(&x, &(&y + &z)), &m(&x, &y) + &m(&x, &z));
        prop_assert_eq!(m(&(&y + &z), &x), &m(&y, &x) + &m(&z, &x));
        prop_assert_eq!(m(&a.one(), &x), x.clone());
        prop_assert_eq!(m(&x, &a.one()), x.clone());
        prop_assert!(m(&x, &a.zero()).is_zero());
    }

    #[test]
    fn normal_form_is_idempotent_and_linear(x in words(3, 4, 4), y in words(3, 4, 4)) {
        let a = QAlgebra::new(3).unwrap();
        let ex = nf(&a, &x);
        let again: Words = ex.terms().map(|(m, c)| (c.clone(), m.factors().to_vec())).collect();
        prop_assert_eq!(nf(&a, &again), ex.clone());
        let both: Words = x.iter().chain(&y).cloned().collect();
        prop_assert_eq!(nf(&a, &both), &ex + &nf(&a, &y));
    }

    #[test]
    fn reduction_order_does_not_matter(x in words(3, 3, 5), seed in any::<u64>()) {
        let a = QAlgebra::new(3).unwrap();
        let fast = nf(&a, &x);
        prop_assert_eq!(reduce_words(3, x.clone(), ReductionOrder::Rightmost), fast.clone());
        prop_assert_eq!(reduce_words(3, x, ReductionOrder::Shuffled(seed)), fast);
    }

    #[test]
    fn multidegree_is_preserved(x in words(4, 1, 6)) {
        let a = QAlgebra::new(4).unwrap();
        let d = Monomial::new(x[0].1.clone()).multidegree(4);
        for (m, _) in nf(&a, &x).terms() {
            prop_assert_eq!(m.multidegree(4), d.clone());
        }
    }

    #[test]
    fn classical_specialization_is_multiplicative(x in words(3, 3, 3), y in words(3, 3, 3)) {
        let a = QAlgebra::new(3).unwrap();
        let one = Rational::from_integer(1.into());
        let (x, y) = (nf(&a, &x), nf(&a, &y));
        let sx = a.specialize_q(&x, &one).unwrap();
        let sy = a.specialize_q(&y, &one).unwrap();
        prop_assert_eq!(a.specialize_q(&a.multiply(&x, &y).unwrap(), &one).unwrap(), sx.mul(&sy));
        prop_assert_eq!(a.specialize_q(&(&x + &y), &one).unwrap(), sx.add(&sy));
    }

    #[test]
    fn transpose_and_reversal(x in words(3, 3, 3), y in words(3, 3, 3)) {
        let a = QAlgebra::new(3).unwrap();
        let (x, y) = (nf(&a, &x), nf(&a, &y));
        let xy = a.multiply(&x, &y).unwrap();
        let t = |e: &QElement| a.transpose(e).unwrap();
        let r = |e: &QElement| a.reverse(e).unwrap();
        prop_assert_eq!(t(&xy), a.multiply(&t(&x), &t(&y)).unwrap());
        prop_assert_eq!(r(&xy), a.multiply(&r(&y), &r(&x)).unwrap());
        prop_assert_eq!(t(&t(&x)), x.clone());
        prop_assert_eq!(r(&r(&x)), x);
    }

    #[test]
    fn no_zero_divisors(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let a = QAlgebra::new(3).unwrap();
        let x = common::homogeneous(&mut rng, &a, 3);
        let y = common::homogeneous(&mut rng, &a, 3);
        prop_assert!(!a.multiply(&x, &y).unwrap().is_zero());
    }
}

/// Sorted words of length `deg` with the multidegree of `seed`, counted by
/// brute force over all multisets of generators.
fn pbw_count(n: u8, seed: &Monomial) -> usize {
    let d = seed.multidegree(n);
    let gens: Vec<Generator> = (1..=n)
        .flat_map(|r| (1..=n).map(move |c| Generator::new(r, c)))
        .collect();
    fn go(gens: &[Generator], from: usize, left: usize, acc: &mut Vec<Generator>, out: &mut Vec<Vec<Generator>>) {
        if left == 0 {
            out.push(acc.clone());
            return;
        }
        for i in from..gens.len() {
            acc.push(gens[i]);
            go(gens, i, left - 1, acc, out);
            acc.pop();
        }
    }
    let mut all = Vec::new();
    go(&gens, 0, seed.factors().len(), &mut Vec::new(), &mut all);
    all.into_iter()
        .filter(|w| Monomial::new(w.clone()).multidegree(n) == d)
        .count()
}

#[test]
fn pbw_dimension_matches_contingency_tables() {
    let mut rng = common::rng(3);
    for n in 2..=3u8 {
        for len in 0..=4 {
            for _ in 0..5 {
                let seed = Monomial::new(common::word(&mut rng, n, len));
                let basis = enumerate_basis(&seed.multidegree(n)).unwrap();
                assert_eq!(basis.len(), pbw_count(n, &seed), "{seed}");
            }
        }
    }
}

#[test]
fn basis_monomials_are_normal() {
    let a = QAlgebra::new(3).unwrap();
    let seed = Monomial::new(vec![
        Generator::new(1, 3),
        Generator::new(2, 2),
        Generator::new(3, 1),
        Generator::new(2, 1),
    ]);
    for m in enumerate_basis(&seed.multidegree(3)).unwrap() {
        let e = a.normal_form(vec![(LaurentQ::one(), m.factors().to_vec())]).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e.terms().next().unwrap().0, &m);
    }
}

#[test]
fn classical_product_of_generators() {
    let a = QAlgebra::new(2).unwrap();
    let one = Rational::from_integer(1.into());
    let x = a.multiply(&a.t(2, 2), &a.t(1, 1)).unwrap();
    let expected =
        CommutativePoly::variable(Generator::new(1, 1)).mul(&CommutativePoly::variable(Generator::new(2, 2)));
    assert_eq!(a.specialize_q(&x, &one).unwrap(), expected);
}
