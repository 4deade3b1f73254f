use thiserror::Error;

use crate::series::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("denominator has zero constant term; not expandable as a power series at t = 0")]
    NotExpandable,
    #[error("division by zero")]
    DivisionByZero,
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid length function: {0}")]
    InvalidLengthFunction(String),
    #[error("model inconsistency: {0}")]
    ModelInconsistency(String),
    #[error(
        "quasi-polynomial fit failed for residue class {class} (best candidate degree {best_degree}); increase probe"
    )]
    FitFailure { class: usize, best_degree: i64 },
    #[error("generation degrees differ: {0} vs {1}")]
    MismatchedDegree(usize, usize),
    #[error("s = {s} is below the complexity {cx}")]
    BelowComplexity { s: u32, cx: u32 },
    #[error("alternating sum needs finite support: {0}")]
    InfiniteSupport(&'static str),
    #[error("not eventually {regime} in model: reduced length is negative at n = {n}")]
    NegativeReduction { regime: &'static str, n: i64 },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("input does not stabilize: {0}")]
    NonStabilizing(String),
    #[error("malformed input: {0}")]
    Input(String),
}
