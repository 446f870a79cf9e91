use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{func}: argument {value} is outside the domain of the function")]
    Domain { func: String, value: String },
    #[error("range error: {0}")]
    Range(String),
    #[error("malformed number '{literal}' at position {pos}")]
    Syntax { literal: String, pos: usize },
}
