use thiserror::Error;

/// Errors raised by the exact-arithmetic layer and the checks built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different quadratic fields: sqrt({left}) vs sqrt({right})")]
    MixedRadicands { left: u64, right: u64 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("galois index {k} is not a unit modulo {n}")]
    NonInvertibleGaloisIndex { k: u64, n: u64 },

    #[error("element does not lie in Q(sqrt({c}))")]
    NotInSubfield { c: u64 },

    #[error("{gamma} is not a double root of the polynomial")]
    NotADoubleRoot { gamma: String },

    #[error("eigenvalue of degree {degree} over Q cannot be represented exactly")]
    EigenvalueDegreeTooHigh { degree: usize },

    #[error("malformed ring data: {0}")]
    ShapeMismatch(String),

    #[error("constraint violated: {0}")]
    ConstraintViolation(String),

    #[error("no R(x, y, g, d) representation: {0}")]
    NoSolution(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    #[error("invalid ring file: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
