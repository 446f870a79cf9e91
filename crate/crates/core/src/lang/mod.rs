//! Source text to statements.
//!
//! Identifiers and variables are case-folded while lexing, so everything
//! downstream compares names with plain equality.

mod ast;
mod lexer;
mod parser;

use std::fmt;

pub use ast::{BinOp, Expr, Statement, Word};
pub use lexer::{quote, scan, tokenize, Scan, Token, TokenKind};
pub use parser::{parse, parse_source, parse_statement};

/// A lexical or grammatical error at a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyntaxError {
    pub message: String,
    pub line: usize,
    pub col: usize,
}

impl SyntaxError {
    pub fn new(message: String, line: usize, col: usize) -> SyntaxError {
        SyntaxError { message, line, col }
    }
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at line {}, column {}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for SyntaxError {}

/// True when `source` cannot be a complete statement yet: a bracket is
/// still open or the last line ends with `%`.
pub fn needs_more_input(source: &str) -> bool {
    let s = scan(source, false);
    s.error.is_none() && (s.open_brackets > 0 || s.pending_continuation)
}
