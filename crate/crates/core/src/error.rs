use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("cannot invert zero")]
    ZeroInverse,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("polynomial is reducible over Q: factor {0}")]
    Reducible(String),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("prime {0} divides the leading coefficient")]
    PrimeDividesLeading(u64),
    #[error("interval endpoint {0} is a root")]
    EndpointIsRoot(String),
    #[error("signature ({s},{t}) not admissible: {reason}")]
    Signature { s: usize, t: usize, reason: String },
    #[error("precision limit of {0} bits reached without a certified answer")]
    Precision(u32),
    #[error("certificate check failed: {0}")]
    Certificate(String),
    #[error("element is not integral")]
    NotIntegral,
    #[error("construction failed: {0}")]
    Construct(String),
}

pub type Result<T> = std::result::Result<T, Error>;
