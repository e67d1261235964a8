use thiserror::Error;

/// Errors raised across the crate.
///
/// Several variants (`BarAsymmetry`, `Format`, `Denominator`, `RouteMismatch`)
/// never fire on valid input; they turn an internal inconsistency into a loud
/// failure instead of a wrong answer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial {0} is not bar-antisymmetric")]
    BarAsymmetry(String),

    #[error("length mismatch: expected {expected}, got {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("index {index} out of range {lo}..={hi}")]
    IndexOutOfRange { index: usize, lo: usize, hi: usize },

    #[error("{0} is not a minimal coset representative")]
    NotCosetMinimal(String),

    #[error("unexpected shape: {0}")]
    Format(String),

    #[error("context mismatch: {0}")]
    ContextMismatch(String),

    #[error("weight space has {size} basis vectors, limit is {limit}")]
    Capacity { size: u128, limit: u128 },

    #[error("result is not a Laurent polynomial: {0}")]
    Denominator(String),

    #[error("weight mismatch between {0} and {1}")]
    WeightMismatch(String, String),

    #[error("{j} is not controlled by {i}")]
    NotControlled { i: String, j: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid {what}: {token:?}")]
    Parse { what: &'static str, token: String },

    #[error("independent computations disagree: {0}")]
    RouteMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
