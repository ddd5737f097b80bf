use thiserror::Error;

/// Errors raised by the algebra layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("minimal polynomial is reducible over Q: {0}")]
    Reducible(String),
    #[error("minimal polynomial must be monic of degree >= 1")]
    BadMinpoly,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields ({0} vs {1})")]
    FieldMismatch(String, String),
    #[error("{0} is not a root of the defining polynomial")]
    NotARoot(String),
    #[error("no good specialization y0 with |y0| <= {0}")]
    NoGoodSpecialization(i64),
    #[error("{0} is not a right composition factor")]
    NotAFactor(String),
    #[error("explicit data for degree {0} is not available (external reference only)")]
    DataUnavailable(usize),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
