use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("operands use different primes ({0} and {1})")]
    PrimeMismatch(u64, u64),
    #[error("cancellation consumed every tracked digit")]
    PrecisionExhausted,
    #[error("division by zero")]
    DivisionByZero,
    #[error("precision must be at least 1")]
    ZeroPrecision,
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("a nonconstant polynomial is required")]
    ConstantPolynomial,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("root selector does not isolate exactly one root (it contains {0})")]
    InvalidSelector(usize),
    #[error("no certifying box found after {0} precision doublings")]
    MaxPrecisionExceeded(u32),
    #[error("could not find a prime factor of the leading coefficient {0}")]
    Unfactored(String),
    #[error("density or region is not p-integral")]
    NonIntegralDensity,
    #[error("integration depth must be positive")]
    DepthZero,
    #[error("jacobian determinant is not a p-adic unit on the unit polydisc")]
    NonUnitJacobian,
    #[error("map is not injective modulo p")]
    NotInjective,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("eigenvalue list must describe 1 as its leading entry")]
    NotNormalized,
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("certificate rejected: {0}")]
    Rejected(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}
