use thiserror::Error;

/// Errors produced by the exact engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field elements live over different bases")]
    BaseMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),
    #[error("isolating interval does not contain exactly one root: {0}")]
    NotIsolating(String),
    #[error("polynomial is reducible over Q: {0}")]
    Reducible(String),
    #[error("left endpoint violates -1 < l <= 0: {0}")]
    DomainViolation(String),
    #[error("point lies outside the domain [l, r)")]
    OutOfDomain,
    #[error("the domain [l, r) does not contain 0")]
    NoZeroInDomain,
    #[error("invalid sided point: {0}")]
    InvalidSidedPoint(String),
    #[error("reference strings are not eventually periodic")]
    ReferencesNotPeriodic,
    #[error("no real base greater than 1 solves the reference equation")]
    NoRealBase,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
