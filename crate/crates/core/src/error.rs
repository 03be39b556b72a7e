use thiserror::Error;

/// Errors raised by the library. Domain errors reject inputs outside an
/// operation's preconditions; `Violation` signals that a mathematical
/// inequality which must hold was observed to fail.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("enumeration guard exceeded: {size} points > limit {limit}")]
    GuardExceeded { size: u128, limit: u128 },
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("violated assertion: {0}")]
    Violation(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn mismatch(msg: impl Into<String>) -> Self {
        Error::Mismatch(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
