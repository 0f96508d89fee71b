use thiserror::Error;

/// Errors raised by the algebra, enumeration and serialization layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("division by zero in the base field")]
    DivisionByZero,
    #[error("element is not a unit")]
    NotInvertible,
    #[error("degree of the zero polynomial is undefined")]
    UndefinedDegree,
    #[error("invalid field modulus: {0}")]
    InvalidModulus(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    /// A code specification violates its type's inequality chain.
    #[error("type {type_tag} code: {constraint} violated")]
    Validation { type_tag: u8, constraint: String },
    /// Two independent computations disagreed; always an implementation bug.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("budget exceeded: {needed} > {limit}")]
    Budget { needed: u128, limit: u128 },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
