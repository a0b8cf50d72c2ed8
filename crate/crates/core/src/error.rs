use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cyclotomic order must be positive")]
    ZeroOrder,
    #[error("cyclotomic order mismatch: {0} vs {1}")]
    OrderMismatch(u32, u32),
    #[error("inverse of zero")]
    DivisionByZero,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid arrangement: {}", .0.join("; "))]
    InvalidArrangement(Vec<String>),
    #[error("flat {0:?} is not a flat of this arrangement")]
    NotAFlat(Vec<usize>),
    #[error("invalid family spec: {0}")]
    InvalidFamily(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("malformed multinet: {0}")]
    MalformedMultinet(String),
    #[error("search guard exceeded: n = {n} > {guard}")]
    SearchGuard { n: usize, guard: usize },
    #[error("missing Aomoto-Betti number for p = {0}")]
    MissingBetti(u64),
    #[error("parse error: {0}")]
    Parse(String),
    /// A cross-check between two independent computations failed.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}
