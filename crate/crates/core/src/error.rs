use thiserror::Error;

/// Errors raised by the library. Every variant is a user-facing condition;
/// internal inconsistencies panic instead.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cannot parse {0:?} as an exact rational (expected p/q or an integer)")]
    Parse(String),
    #[error("case {case}: expected {expected} entries, got {got}")]
    Length {
        case: String,
        expected: usize,
        got: usize,
    },
    #[error("case {case}: symmetry constraint k{i} = k{j} violated")]
    Symmetry { case: String, i: usize, j: usize },
    #[error("normalization N must be positive, got {0}")]
    NonPositiveN(String),
    #[error("(γ,δ) = ({gamma},{delta}) lies outside the region of case {case}")]
    OutsideRegion {
        case: String,
        gamma: String,
        delta: String,
    },
    #[error("k-vector has an entry k{index} = {value} < -1")]
    Inadmissible { index: usize, value: String },
    #[error("linear system has no unique solution")]
    Singular,
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("invalid complete-intersection data: {0}")]
    InvalidCi(String),
    #[error("not reducible to T_k form: {0}")]
    NotReducible(String),
    #[error("operator has degree {got}, expected {expected}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("operator is not of T_k shape: {0}")]
    NotTkShape(String),
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),
    #[error("Newton iteration did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("unknown case {0:?}")]
    UnknownCase(String),
}
