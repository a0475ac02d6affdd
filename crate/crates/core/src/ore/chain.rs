use crate::algebra::{Element, QMatrixAlgebra};
use crate::coeffs::{Field, Laurent};
use crate::minors::{quantum_minor, MinorId};

use super::engine::{OreEngine, Strategy};
use super::witness::{OreWitness, Side};
use super::OreError;

/// Clearance of an element against a product `D_1 ⋯ D_p`:
/// left form `scale · D_1^{m_1} ⋯ D_p^{m_p} · e = r' · D_1 ⋯ D_p`,
/// right form `scale · e · D_1^{m_1} ⋯ D_p^{m_p} = D_1 ⋯ D_p · r'`.
///
/// `links[i]` is the single-minor witness against `D_{i+1}`. In left form
/// the element is cleared against `D_p` first and each cofactor is passed
/// on towards `D_1`; in right form the order is reversed.
#[derive(Clone, Debug)]
pub struct ChainWitness<F> {
    pub minors: Vec<MinorId>,
    pub side: Side,
    pub element: Element<F>,
    pub links: Vec<OreWitness<F>>,
    pub scale: Laurent<F>,
    pub cofactor: Element<F>,
    pub certified: bool,
}

impl<F: Field> ChainWitness<F> {
    pub fn powers(&self) -> Vec<u32> {
        self.links.iter().map(|w| w.power).collect()
    }

    pub fn residual(&self, alg: &QMatrixAlgebra<F>) -> Result<Element<F>, OreError> {
        self.residual_with_powers(alg, &self.powers())
    }

    pub(crate) fn residual_with_powers(&self, alg: &QMatrixAlgebra<F>, powers: &[u32]) -> Result<Element<F>, OreError> {
        let mut s_prime = alg.one();
        let mut s = alg.one();
        for (m, &p) in self.minors.iter().zip(powers) {
            let d = quantum_minor(alg, m)?;
            s_prime = alg.multiply(&s_prime, &alg.pow(&d, p)?)?;
            s = alg.multiply(&s, &d)?;
        }
        let (lhs, rhs) = match self.side {
            Side::Left => (
                alg.multiply(&s_prime, &self.element)?,
                alg.multiply(&self.cofactor, &s)?,
            ),
            Side::Right => (
                alg.multiply(&self.element, &s_prime)?,
                alg.multiply(&s, &self.cofactor)?,
            ),
        };
        Ok(&lhs.scale(&self.scale) - &rhs)
    }
}

pub fn multi_minor_witness<F: Field>(
    alg: &QMatrixAlgebra<F>,
    minors: &[MinorId],
    element: &Element<F>,
    side: Side,
    strategy: Strategy,
) -> Result<ChainWitness<F>, OreError> {
    if minors.is_empty() {
        return Err(OreError::NoMinors);
    }
    let order: Vec<usize> = match side {
        Side::Left => (0..minors.len()).rev().collect(),
        Side::Right => (0..minors.len()).collect(),
    };
    let mut links: Vec<Option<OreWitness<F>>> = vec![None; minors.len()];
    let mut current = element.clone();
    let mut scale = Laurent::one();
    for i in order {
        let w = OreEngine::new(alg, &minors[i], side)?.witness_for_element(&current, strategy)?;
        current = w.cofactor.clone();
        scale = &scale * &w.scale;
        links[i] = Some(w);
    }
    let mut chain = ChainWitness {
        minors: minors.to_vec(),
        side,
        element: element.clone(),
        links: links.into_iter().map(|w| w.expect("every minor is visited")).collect(),
        scale,
        cofactor: current,
        certified: false,
    };
    let residual = chain.residual(alg)?;
    if !residual.is_zero() {
        return Err(OreError::CertificateFailed(format!("chain leaves residual {residual}")));
    }
    chain.certified = true;
    Ok(chain)
}
