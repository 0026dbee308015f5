use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed scalar text {0:?}")]
    MalformedScalar(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("exponent must be at least {min}, got {got}")]
    Exponent { min: u32, got: u32 },
    #[error("factorizations describe different matrices")]
    DifferentMatrix,
    #[error("{0} requires a prime field")]
    NotPrimeField(&'static str),
    #[error("oracle budget exceeded: {needed} candidates, budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("malformed matrix JSON: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
