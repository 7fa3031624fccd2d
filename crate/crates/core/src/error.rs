use thiserror::Error;

/// Errors raised by the exact kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("scalar towers do not embed into one another: {0} vs {1}")]
    TowerMismatch(String, String),
    #[error("scalar is not real: {0}")]
    NotReal(String),
    #[error("radicand must be positive, got {0}")]
    NonPositiveRadicand(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("elements belong to different algebras: {0}")]
    AlgebraMismatch(String),
    #[error("element is not a projection: {0}")]
    NotAProjection(String),
    #[error("projections are not equivalent (dimension vectors {0} and {1})")]
    NotEquivalent(String, String),
    #[error("center value has a negative coordinate: {0}")]
    NegativeCoordinate(String),
    #[error("trace weights must be positive and sum to 1: {0}")]
    InvalidWeights(String),
    #[error("unknown verification suite `{0}`")]
    UnknownSuite(String),
    #[error("unknown built-in `{0}`")]
    UnknownBuiltin(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid structure: {0}")]
    InvalidStructure(String),
    #[error("regularity certificate failed for {0}")]
    RegularityCertificateFailure(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
