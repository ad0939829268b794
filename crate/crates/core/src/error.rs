use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("step set must have dimension {expected}, got {got}")]
    UnsupportedDimension { expected: usize, got: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("evaluation point must be strictly positive, coordinate {index} is {value}")]
    NonPositivePoint { index: usize, value: f64 },

    #[error("empty exponent multiset")]
    EmptyExponents,

    #[error("exponent multiset has no positive critical point (all exponents on one side of zero)")]
    TrivialExponents,

    #[error("angle {theta} outside [0, pi/2]")]
    AngleOutOfRange { theta: f64 },

    #[error("invalid projection normal: {reason}")]
    InvalidNormal { reason: String },

    #[error("model {model} is not orthant-essential: {reason}")]
    Inessential { model: String, reason: String },

    #[error("model is not a 2D small-step set")]
    NotSmallStep,

    #[error("state space of {required} positions exceeds the configured cap of {cap}")]
    StateSpaceExceeded { required: usize, cap: usize },

    #[error("insufficient data for growth estimation: {reason}")]
    InsufficientData { reason: String },

    #[error("rotation precondition failed: {reason}")]
    RotationPrecondition { reason: String },

    #[error("excursion floor unavailable: inventory has no interior critical point")]
    ExcursionUnavailable,

    #[error("bound ledger for {model} is inconsistent: max lower {max_lower} exceeds min upper {min_upper}")]
    LedgerIntegrity {
        model: String,
        max_lower: f64,
        min_upper: f64,
    },

    #[error("bound for model {bound_model} cannot be added to ledger for {ledger_model}")]
    LedgerModelMismatch {
        ledger_model: String,
        bound_model: String,
    },

    #[error("solver failed to converge: {reason}")]
    SolverFailure { reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
