use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime in [2, 2^31)")]
    NotPrime(u64),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { pos: usize, name: String },
    #[error("exponent overflow")]
    Overflow,
    #[error("too many variables ({0}); at most 16 are supported")]
    TooManyVariables(usize),
    #[error("mismatched ambient data: {0}")]
    Mismatch(String),
    #[error("input is not homogeneous: {0}")]
    NonHomogeneous(String),
    #[error("module is not of finite length")]
    NotFiniteLength,
    #[error("resource budget exceeded: {0}")]
    ResourceExceeded(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
