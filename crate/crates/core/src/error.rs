use thiserror::Error;

/// Errors raised by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{p} and {q} are not coprime")]
    NotCoprime { p: u64, q: u64 },
    #[error("extension degree would exceed the search cap of {cap}")]
    SearchLimit { cap: usize },
    #[error("the zero element has no multiplicative order")]
    ZeroElement,
    #[error("arity mismatch: expected {expected} variables, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("element is not a nontrivial root of unity")]
    NotRootOfUnity,
    #[error("bad shape: {0}")]
    BadShape(String),
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("input too large: {0}")]
    TooLarge(String),
    #[error("function is constant")]
    ConstantFunction,
    #[error("function is identically zero")]
    ZeroFunction,
    #[error("search budget exceeded: {needed} candidates > {budget}")]
    SearchBudgetExceeded { needed: f64, budget: f64 },
    #[error("{theorem} failed at {params}")]
    AssertionFailure { theorem: String, params: String },
    #[error("value out of range: {0}")]
    BadRange(String),
    #[error("{q} does not divide {modulus}")]
    NotDivisor { q: u64, modulus: u64 },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
