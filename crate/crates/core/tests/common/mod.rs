#![allow(dead_code)]

use qmb_core::algebra::Generator;
use qmb_core::ore::enumerate_basis;
use qmb_core::{Element, LaurentQ, Monomial, QAlgebra, QElement, Rational};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn generator(rng: &mut ChaCha8Rng, n: u8) -> Generator {
    Generator::new(rng.gen_range(1..=n), rng.gen_range(1..=n))
}

pub fn word(rng: &mut ChaCha8Rng, n: u8, len: usize) -> Vec<Generator> {
    (0..len).map(|_| generator(rng, n)).collect()
}

/// Small nonzero Laurent coefficient `c q^e`, or a two-term one.
pub fn coeff(rng: &mut ChaCha8Rng) -> LaurentQ {
    let c = |rng: &mut ChaCha8Rng| {
        let v: i64 = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
        Rational::from_integer(v.into())
    };
    let a = LaurentQ::monomial(c(rng), rng.gen_range(-2..=2));
    if rng.gen_bool(0.3) {
        &a + &LaurentQ::monomial(c(rng), rng.gen_range(-2..=2))
    } else {
        a
    }
}

/// Random combination of up to `terms` words of length at most `max_len`,
/// in normal form; may be zero.
pub fn element(rng: &mut ChaCha8Rng, alg: &QAlgebra, terms: usize, max_len: usize) -> QElement {
    let words = (0..rng.gen_range(1..=terms))
        .map(|_| {
            let len = rng.gen_range(0..=max_len);
            (coeff(rng), word(rng, alg.n(), len))
        })
        .collect();
    alg.normal_form(words).unwrap()
}

pub fn nonzero_element(rng: &mut ChaCha8Rng, alg: &QAlgebra, terms: usize, max_len: usize) -> QElement {
    loop {
        let e = element(rng, alg, terms, max_len);
        if !e.is_zero() {
            return e;
        }
    }
}

/// Random nonzero element of one multidegree, of total degree `1..=max_deg`.
pub fn homogeneous(rng: &mut ChaCha8Rng, alg: &QAlgebra, max_deg: usize) -> QElement {
    let len = rng.gen_range(1..=max_deg);
    let seed = Monomial::new(word(rng, alg.n(), len));
    let basis = enumerate_basis(&seed.multidegree(alg.n())).unwrap();
    loop {
        let mut e = Element::zero(alg.n());
        for m in &basis {
            if rng.gen_bool(0.5) {
                e = &e + &Element::from_monomial(alg.n(), m.clone(), coeff(rng));
            }
        }
        if !e.is_zero() {
            return e;
        }
    }
}
