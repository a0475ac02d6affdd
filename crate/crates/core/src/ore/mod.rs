//! Ore-condition witnesses for multiplicative sets generated by quantum minors.
//!
//! For a minor `D` and an element `e`, a left-form witness is
//! `scale · D^m · e = r' · D` and a right-form witness is
//! `scale · e · D^m = D · r'`, with `scale` a nonzero central Laurent
//! polynomial in `q` (1 unless the linear solver met denominators).

mod basis;
mod chain;
mod engine;
mod file;
mod plan;
mod solver;
mod witness;

use thiserror::Error;

use crate::algebra::{AlgebraError, MultiDegree};
use crate::identities::IdentityError;
use crate::minors::MinorError;

pub use basis::enumerate_basis;
pub use chain::{multi_minor_witness, ChainWitness};
pub use engine::{
    compose_product, compose_sum, extend_to_power, reduce_relative, solve_witness, witness_for_element,
    witness_generator_constructive, OreEngine, Strategy,
};
pub use file::{
    verify_witness_file, ChainRecord, MinorRecord, NodeRecord, VerifyError, VerifyReport, WitnessFile, WitnessRecord,
    WITNESS_FORMAT,
};
pub use witness::{ore_residual, DerivationNode, OreWitness, PowerAttempt, Rule, Side};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OreError {
    #[error("multidegree {0} is unbalanced")]
    UnbalancedMultiDegree(MultiDegree),
    #[error("the zero element has no witness")]
    ZeroElement,
    #[error("no witness with power at most {m_max}")]
    Unsat { m_max: u32, attempts: Vec<PowerAttempt> },
    #[error("certificate check failed: {0}")]
    CertificateFailed(String),
    #[error("relation does not match: {0}")]
    ResidualMismatch(String),
    #[error("incompatible witnesses: {0}")]
    Mismatch(String),
    #[error("power must be at least 1, got {0}")]
    BadPower(u32),
    #[error("empty list of minors")]
    NoMinors,
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error(transparent)]
    Identity(#[from] IdentityError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Minor(#[from] MinorError),
}

impl OreError {
    pub fn exceeds_degree_cap(&self) -> bool {
        match self {
            OreError::Identity(e) => e.exceeds_degree_cap(),
            OreError::Algebra(e) => e.exceeds_degree_cap(),
            OreError::Minor(e) => e.exceeds_degree_cap(),
            _ => false,
        }
    }
}
