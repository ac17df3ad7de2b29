//! Cohomology, triple Massey products, truncated Sullivan minimal models and
//! s-formality certificates for finitely generated commutative differential
//! graded algebras over the rationals.

pub mod algebra;
pub mod catalog;
pub mod dga;
pub mod formality;
pub mod io;
pub mod linalg;

pub use algebra::{Element, FreeGca, Monomial};
pub use dga::{CohomologyClass, Dga};

/// Exact arbitrary-precision rational coefficients.
pub type Rational = num_rational::BigRational;
