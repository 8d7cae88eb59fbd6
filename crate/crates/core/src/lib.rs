//! Exact and numerical tools for the two-function tt*-Toda reductions:
//! holomorphic data, asymptotic data, Stokes data, quantum differential
//! operators and the radial boundary-value problem.

pub mod case;
pub mod cyclotomic;
pub mod enumeration;
pub mod error;
pub mod linalg;
pub mod numtheory;
pub mod qdo;
pub mod radial;
pub mod scalar;
pub mod stokes;
pub mod theta;

pub use case::{CaseDescriptor, CaseId, Group};
pub use error::Error;

/// Exact rational numbers.
pub type Rational = num::BigRational;
/// Exact real elements of cyclotomic fields.
pub type AlgReal = cyclotomic::RealCyclotomic<Rational>;
pub type KVector = case::KVector<Rational>;
pub type AsymptoticData = case::AsymptoticData<Rational>;
pub type ThetaPoly = theta::ThetaPoly<Rational>;
pub type RadialSolution = radial::RadialSolution<f64>;
pub type SolverConfig = radial::SolverConfig<f64>;
