use thiserror::Error;

/// Failure classes, mirrored by the CLI exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Input,
    Certificate,
    Precision,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial is not squarefree; factor it first")]
    NotSquarefree,
    #[error("polynomial is reducible over Q")]
    Reducible,
    #[error("matrix is singular; kernel vector {0}")]
    Singular(String),
    #[error("matrix is not diagonalizable over C (outside scope: the self-similarity must be diagonalizable)")]
    NotDiagonalizable,
    #[error("eigenvalue is not an algebraic integer: {0}")]
    NotAlgebraicInteger(String),
    #[error("inverse is not polynomial in the formal indeterminates")]
    NonPolynomialInverse,
    #[error("precision insufficient: {0}")]
    Precision(String),
    #[error("certificate failed: {0}")]
    Certificate(String),
    #[error("no bounded invariant window exists: B has an eigenvalue of modulus > 1 ({0})")]
    NoInvariantWindow(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Precision(_) => ErrorClass::Precision,
            Error::Certificate(_) | Error::NonPolynomialInverse | Error::NoInvariantWindow(_) => {
                ErrorClass::Certificate
            }
            _ => ErrorClass::Input,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
