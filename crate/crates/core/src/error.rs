//! Crate-wide error type.

/// Errors produced by tower construction and arithmetic.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// The requested modulus is not an odd prime in the supported range.
    #[error("{0} is not an odd prime ≥ 3")]
    NotPrime(u64),

    /// Division (or inversion) of a zero element or polynomial.
    #[error("division by zero")]
    DivisionByZero,

    /// A precondition on the arguments does not hold.
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    /// A randomized search ran past its iteration cap.
    #[error("search for {what} exceeded {cap} iterations")]
    IterationCap { what: &'static str, cap: u64 },

    /// A projection was requested for an element outside the target subfield.
    #[error("element is not in the requested subfield")]
    NotInSubfield,

    /// Internal data failed a consistency check it should satisfy by construction.
    #[error("corrupted state: {0}")]
    Corrupt(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameters(msg.into())
    }

    pub(crate) fn corrupt(msg: impl Into<String>) -> Self {
        Error::Corrupt(msg.into())
    }
}
