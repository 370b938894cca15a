use thiserror::Error;

/// Errors raised by the algebra kernel and the verification suites.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime modulus")]
    NotPrime(u64),
    #[error("multinomial parts sum to {actual}, expected {expected}")]
    PartsMismatch { expected: u64, actual: u64 },
    #[error("operands live in different rings or coefficient domains")]
    DomainMismatch,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial is not weighted-homogeneous")]
    NotHomogeneous,
    #[error("the zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("matrix size mismatch: {0}")]
    SizeMismatch(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("step budget of {0} exhausted")]
    Budget(u64),
    #[error("the ideal is the unit ideal")]
    UnitIdeal,
}

pub type Result<T> = std::result::Result<T, Error>;
