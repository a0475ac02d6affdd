//! Exact symbolic computation in the quantum matrix bialgebra `M_q(n)`:
//! PBW normal forms, quantum minors, machine checks of their commutation
//! identities, and certified Ore-condition witnesses for multiplicative sets
//! generated by quantum minors.
//!
//! Everything is generic over an exact coefficient [`Field`]; the aliases
//! below fix it to arbitrary-precision rationals, which is what the CLI and
//! the acceptance suite use.

pub mod algebra;
pub mod coeffs;
pub mod identities;
pub mod linsolve;
pub mod minors;
pub mod ore;
pub mod text;

pub use algebra::{Element, Generator, Monomial, MultiDegree, QMatrixAlgebra};
pub use coeffs::{Field, Laurent, RatFunc};
pub use minors::{IndexSet, MinorId};

/// Arbitrary-precision rationals.
pub type Rational = num_rational::BigRational;
/// Laurent polynomials in `q` over the rationals.
pub type LaurentQ = Laurent<Rational>;
/// Rational functions in `q` over the rationals.
pub type QRational = RatFunc<Rational>;
/// Elements of `M_q(n)` over the rationals.
pub type QElement = Element<Rational>;
/// `M_q(n)` over the rationals.
pub type QAlgebra = QMatrixAlgebra<Rational>;
