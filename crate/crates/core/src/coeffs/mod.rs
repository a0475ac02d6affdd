//! Exact scalar domains: the coefficient field, Laurent polynomials in `q`
//! and rational functions in `q`.

mod field;
mod laurent;
mod ratfunc;

pub use field::Field;
pub use laurent::Laurent;
pub use ratfunc::{coprime_factor_basis, denominator_lcm, RatFunc};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("cannot specialize at q = 0")]
    ZeroSpecialization,
    #[error("specialization point is a pole")]
    PoleAtSpecialization,
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed Laurent polynomial `{0}`")]
    Parse(String),
}
