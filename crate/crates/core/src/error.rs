use thiserror::Error;

/// Broad failure classes. The command line maps each class to its own exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Parse,
    Precondition,
    Budget,
    Verification,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },

    #[error("exponent at column {column} is not a non-negative integer literal")]
    BadExponent { column: usize },

    #[error("dimension mismatch: expected {expected} coordinates, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{0} is not prime")]
    NotPrime(String),

    #[error("zero polynomial is not allowed here: {0}")]
    ZeroPolynomial(String),

    #[error("expected univariate polynomials in a common variable, found variables {0:?}")]
    NotUnivariate(Vec<String>),

    #[error("polynomials are not coprime over Q: common factor {0}")]
    NotCoprime(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("fixed-prime obstruction: {0}")]
    Obstruction(String),

    #[error("budget exhausted: {0}")]
    Budget(String),

    #[error("internal verification failure: {0}")]
    Verification(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Syntax { .. } | Error::BadExponent { .. } => ErrorKind::Parse,
            Error::Budget(_) => ErrorKind::Budget,
            Error::Verification(_) => ErrorKind::Verification,
            _ => ErrorKind::Precondition,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
