use thiserror::Error;

/// Errors raised by the algebra, module and construction layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AtlasError {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("polynomials live over different fields (p = {0} and p = {1})")]
    FieldMismatch(u32, u32),
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: u32, right: u32 },
    #[error("inhomogeneous polynomial: monomial of degree {found} in a form of degree {expected}")]
    Inhomogeneous { expected: u32, found: u32 },
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("window exhausted: {0}")]
    WindowExhausted(String),
    #[error("containment failure: {0}")]
    Containment(String),
    #[error("module is not free: {0}")]
    NotFree(String),
    #[error("curve is not quasiprimitive: {0}")]
    NotQuasiprimitive(String),
    #[error("quotient of the filtration is not of rank one at step {0}")]
    NonRankOne(usize),
    #[error("type invariant violated: {0}")]
    TypeInvariant(String),
    #[error("invalid construction data: {0}")]
    InvalidData(String),
    #[error("construction failed verification: {0}")]
    Verification(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("equivalent C_{{d,l}} criteria disagree: {0}")]
    CriteriaDisagree(String),
}

pub type Result<T> = std::result::Result<T, AtlasError>;
