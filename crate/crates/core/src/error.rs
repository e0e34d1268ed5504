use thiserror::Error;

/// Errors raised by the library. `InsufficientPrecision` is recoverable by
/// retrying with more digits; everything else is a domain error.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("zero input where a nonzero value is required")]
    ZeroInput,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("p = 2 is not allowed here")]
    OddPrimeRequired,
    #[error("prime mismatch: {0} vs {1}")]
    PrimeMismatch(u64, u64),
    #[error("degree {0} unsupported (max {1})")]
    DegreeUnsupported(usize, usize),
    #[error("polynomial must be monic")]
    NotMonic,
    #[error("input polynomial is reducible")]
    ReducibleInput,
    #[error("input polynomial is inseparable")]
    Inseparable,
    #[error("factorization bound {0} exceeded on {1}")]
    FactorBoundExceeded(u64, String),
    #[error("search bound exceeded: {0}")]
    SearchBoundExceeded(String),
    #[error("constraint set is contradictory: {0}")]
    BadConstraint(String),
    #[error("norm-group enumeration did not stabilize by depth {0}")]
    NonStabilization(usize),
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),
    #[error("{0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// CLI exit code mapping: 2 for domain errors, 3 for precision exhaustion.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InsufficientPrecision(_) => 3,
            _ => 2,
        }
    }
}
