use thiserror::Error;

use crate::bignum::NumError;
use crate::lang::SyntaxError;

/// Every failure a statement can report on the console.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0}")]
    Syntax(#[from] SyntaxError),
    #[error("undefined variable {0}")]
    UndefinedVariable(String),
    #[error("undefined function {0}")]
    UndefinedFunction(String),
    #[error("unknown command {0}")]
    UnknownCommand(String),
    #[error("type error: {0}")]
    Type(String),
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("index error: {0}")]
    Index(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("range error: {0}")]
    Range(String),
    #[error("singular matrix: {0}")]
    SingularMatrix(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("format error: {0}")]
    Format(String),
}

impl From<NumError> for Error {
    fn from(e: NumError) -> Self {
        match e {
            NumError::DivisionByZero => Error::DivisionByZero,
            NumError::Domain { .. } => Error::Domain(e.to_string()),
            NumError::Range(msg) => Error::Range(msg),
            NumError::Syntax { literal, pos } => Error::Syntax(SyntaxError::new(
                format!("malformed number '{literal}'"),
                1,
                pos + 1,
            )),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
