//! The brute-force oracle: for `m = 1, 2, ...` solve the linear system for
//! `r'` in the multidegree component forced by `D^m e`.

use std::collections::BTreeMap;
use std::sync::Mutex;

use crate::algebra::{Element, Grading, Monomial, MultiDegree, QMatrixAlgebra};
use crate::coeffs::{coprime_factor_basis, denominator_lcm, Field, Laurent};
use crate::linsolve;
use crate::minors::{quantum_minor, MinorId};

use super::basis::enumerate_basis;
use super::witness::{PowerAttempt, Side};
use super::OreError;

/// A minor with its powers cached.
pub(crate) struct Frame<F> {
    pub minor: MinorId,
    pub d: Element<F>,
    pub degree: MultiDegree,
    pows: Mutex<Vec<Element<F>>>,
}

impl<F: Field> Frame<F> {
    pub fn new(alg: &QMatrixAlgebra<F>, minor: &MinorId) -> Result<Self, OreError> {
        let d = quantum_minor(alg, minor)?;
        let degree = d.terms().next().expect("minors are nonzero").0.multidegree(alg.n());
        Ok(Frame {
            minor: minor.clone(),
            pows: Mutex::new(vec![alg.one(), d.clone()]),
            d,
            degree,
        })
    }

    pub fn pow(&self, alg: &QMatrixAlgebra<F>, k: u32) -> Result<Element<F>, OreError> {
        let mut pows = self.pows.lock().unwrap();
        while pows.len() <= k as usize {
            let next = alg.multiply(pows.last().unwrap(), &self.d)?;
            pows.push(next);
        }
        Ok(pows[k as usize].clone())
    }
}

/// A solution of `scale · D^power · e = cofactor · D^target` (or its right form).
#[derive(Clone, Debug)]
pub(crate) struct Solution<F> {
    pub power: u32,
    pub scale: Laurent<F>,
    pub cofactor: Element<F>,
    pub denominators: Vec<Laurent<F>>,
    pub attempts: Vec<PowerAttempt>,
}

/// Scale, cofactor and cleared denominators at one power.
type AtPower<F> = (Laurent<F>, Element<F>, Vec<Laurent<F>>);

/// `D^m e = r D^j` (left) or `e D^m = D^j r` (right) at one power, for
/// homogeneous `e`.
fn solve_at<F: Field>(
    alg: &QMatrixAlgebra<F>,
    frame: &Frame<F>,
    e: &Element<F>,
    degree: &MultiDegree,
    side: Side,
    m: u32,
    target: u32,
) -> Result<(PowerAttempt, Option<AtPower<F>>), OreError> {
    let dm = frame.pow(alg, m)?;
    let rhs = match side {
        Side::Left => alg.multiply(&dm, e)?,
        Side::Right => alg.multiply(e, &dm)?,
    };
    let cof_degree = degree
        .add(&frame.degree.scaled(m))
        .checked_sub(&frame.degree.scaled(target));
    let basis = match cof_degree {
        Some(cd) => enumerate_basis(&cd)?,
        None => Vec::new(),
    };
    let dj = frame.pow(alg, target)?;
    let columns: Vec<Element<F>> = basis
        .iter()
        .map(|mu| {
            let mu = Element::from_monomial(alg.n(), mu.clone(), Laurent::one());
            match side {
                Side::Left => alg.multiply(&mu, &dj),
                Side::Right => alg.multiply(&dj, &mu),
            }
        })
        .collect::<Result<_, _>>()?;
    let mut rows: BTreeMap<Monomial, usize> = BTreeMap::new();
    for m in rhs
        .terms()
        .map(|(m, _)| m)
        .chain(columns.iter().flat_map(|c| c.terms().map(|(m, _)| m)))
    {
        let next = rows.len();
        rows.entry(m.clone()).or_insert(next);
    }
    let mut matrix = vec![vec![Laurent::zero(); columns.len()]; rows.len()];
    for (j, col) in columns.iter().enumerate() {
        for (mono, c) in col.terms() {
            matrix[rows[mono]][j] = c.clone();
        }
    }
    let mut b = vec![Laurent::zero(); rows.len()];
    for (mono, c) in rhs.terms() {
        b[rows[mono]] = c.clone();
    }
    let out = linsolve::solve(&matrix, &b);
    let attempt = PowerAttempt {
        power: m,
        unknowns: columns.len(),
        equations: rows.len(),
        rank: out.rank,
        augmented_rank: out.augmented_rank,
        feasible: out.solution.is_some(),
    };
    let Some(x) = out.solution else {
        return Ok((attempt, None));
    };
    let dens: Vec<Laurent<F>> = x.iter().map(|v| v.denominator().clone()).collect();
    let scale = denominator_lcm(&dens);
    let mut cofactor = Element::zero(alg.n());
    for (mu, v) in basis.iter().zip(&x) {
        if v.is_zero() {
            continue;
        }
        // v * scale is a Laurent polynomial since scale is a multiple of v's denominator
        let c = crate::coeffs::RatFunc::from_laurent(scale.clone()) * v.clone();
        let c = c.as_laurent().expect("lcm clears every denominator").clone();
        cofactor = &cofactor + &Element::from_monomial(alg.n(), mu.clone(), c);
    }
    let dens = dens.into_iter().filter(|d| !d.is_one()).collect();
    Ok((attempt, Some((scale, cofactor, dens))))
}

/// Minimal `m` in `1..=m_max` for a homogeneous element.
fn solve_homogeneous<F: Field>(
    alg: &QMatrixAlgebra<F>,
    frame: &Frame<F>,
    e: &Element<F>,
    degree: &MultiDegree,
    side: Side,
    target: u32,
    m_max: u32,
) -> Result<Result<Solution<F>, Vec<PowerAttempt>>, OreError> {
    let mut attempts = Vec::new();
    for m in 1..=m_max {
        let (attempt, found) = solve_at(alg, frame, e, degree, side, m, target)?;
        if let Some((scale, cofactor, denominators)) = found {
            return Ok(Ok(Solution {
                power: m,
                scale,
                cofactor,
                denominators,
                attempts,
            }));
        }
        attempts.push(attempt);
    }
    Ok(Err(attempts))
}

/// Solves against `D^target`, splitting inhomogeneous input by multidegree and
/// aligning the component powers to their maximum.
pub(crate) fn solve<F: Field>(
    alg: &QMatrixAlgebra<F>,
    frame: &Frame<F>,
    e: &Element<F>,
    side: Side,
    target: u32,
    m_max: u32,
) -> Result<Result<Solution<F>, Vec<PowerAttempt>>, OreError> {
    if e.is_zero() {
        return Err(OreError::ZeroElement);
    }
    if let Grading::Homogeneous(d) = e.grading() {
        return solve_homogeneous(alg, frame, e, &d, side, target, m_max);
    }
    let mut parts = Vec::new();
    for (d, part) in e.homogeneous_components() {
        match solve_homogeneous(alg, frame, &part, &d, side, target, m_max)? {
            Ok(s) => parts.push(s),
            Err(attempts) => return Ok(Err(attempts)),
        }
    }
    Ok(Ok(align(alg, frame, side, parts)?))
}

/// Combines solutions for summands into one for the sum:
/// `S D^M Σ e_i = Σ (S / s_i) D^{M - m_i} r_i D^j` with `S = Π s_i`, `M = max m_i`.
pub(crate) fn align<F: Field>(
    alg: &QMatrixAlgebra<F>,
    frame: &Frame<F>,
    side: Side,
    parts: Vec<Solution<F>>,
) -> Result<Solution<F>, OreError> {
    let power = parts.iter().map(|p| p.power).max().unwrap_or(0);
    let scale = parts.iter().fold(Laurent::one(), |acc, p| &acc * &p.scale);
    let mut cofactor = Element::zero(alg.n());
    let mut denominators = Vec::new();
    for (i, p) in parts.iter().enumerate() {
        let others = parts
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .fold(Laurent::one(), |acc, (_, q)| &acc * &q.scale);
        let pad = frame.pow(alg, power - p.power)?;
        let term = match side {
            Side::Left => alg.multiply(&pad, &p.cofactor)?,
            Side::Right => alg.multiply(&p.cofactor, &pad)?,
        };
        cofactor = &cofactor + &term.scale(&others);
        denominators.extend(p.denominators.iter().cloned());
    }
    Ok(Solution {
        power,
        scale,
        cofactor,
        denominators,
        attempts: Vec::new(),
    })
}

pub(crate) fn denominator_zeros<F: Field>(dens: &[Laurent<F>]) -> Vec<Laurent<F>> {
    coprime_factor_basis(dens)
}
