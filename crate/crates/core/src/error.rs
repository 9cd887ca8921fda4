use thiserror::Error;

/// Failure to parse an exact rational such as `"3/4"`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseScalarError {
    #[error("malformed rational `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Errors raised by module actions and checks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error("vector leaves the carrier: {0}")]
    CarrierViolation(String),
    #[error("twist data violates the required conditions: {0}")]
    ConditionViolation(String),
    #[error("closed-form family does not match the carrier: {0}")]
    FamilyMismatch(String),
    #[error("vector is not homogeneous for H(0)")]
    NonHomogeneous,
    #[error("zero vector has no highest-weight data")]
    ZeroVector,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("closure exceeded the iteration cap of {0}")]
    IterationCap(usize),
}

pub type Result<T> = std::result::Result<T, CoreError>;
