use std::fmt;

use super::lexer::{quote, TokenKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Pow => "^",
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Mul | BinOp::Div => 2,
            BinOp::Pow => 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// Numeric literal kept as written (lowercased).
    Number(String),
    Str(String),
    Bool(bool),
    /// Variable name including the `$`.
    Var(String),
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Call {
        name: String,
        args: Vec<Expr>,
        options: Vec<(String, Expr)>,
    },
    Index(Box<Expr>, Box<Expr>),
    Vector(Vec<Expr>),
    Complex(Box<Expr>, Box<Expr>),
    Matrix(Box<Expr>, Box<Expr>, Box<Expr>),
}

/// A command argument: one raw token without its position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word {
    pub kind: TokenKind,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Statement {
    Expr(Expr),
    Assign { target: String, value: Expr },
    Command { name: String, args: Vec<Word> },
}

const UNARY: u8 = 3;
const ATOM: u8 = 5;

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Binary(op, ..) => op.precedence(),
            Expr::Neg(_) => UNARY,
            _ => ATOM,
        }
    }
}

fn write_wrapped(f: &mut fmt::Formatter<'_>, e: &Expr, wrap: bool) -> fmt::Result {
    if wrap {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, items: &[Expr]) -> fmt::Result {
    for (i, e) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{e}")?;
    }
    Ok(())
}

/// Prints source text with the fewest parentheses that reparse to the same
/// tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Number(n) => f.write_str(n),
            Expr::Str(s) => f.write_str(&quote(s)),
            Expr::Bool(b) => write!(f, "{b}"),
            Expr::Var(v) => f.write_str(v),
            Expr::Neg(x) => {
                f.write_str("-")?;
                write_wrapped(f, x, x.precedence() < UNARY)
            }
            Expr::Binary(op, l, r) => {
                let p = op.precedence();
                if *op == BinOp::Pow {
                    write_wrapped(f, l, l.precedence() <= p)?;
                    f.write_str("^")?;
                    write_wrapped(f, r, r.precedence() < UNARY)
                } else {
                    write_wrapped(f, l, l.precedence() < p)?;
                    write!(f, " {} ", op.symbol())?;
                    write_wrapped(f, r, r.precedence() <= p)
                }
            }
            Expr::Call { name, args, options } => {
                write!(f, "{name}(")?;
                write_list(f, args)?;
                for (i, (k, v)) in options.iter().enumerate() {
                    if i > 0 || !args.is_empty() {
                        f.write_str(", ")?;
                    }
                    write!(f, "{k}={v}")?;
                }
                f.write_str(")")
            }
            Expr::Index(base, idx) => {
                write_wrapped(f, base, base.precedence() < ATOM)?;
                write!(f, "[{idx}]")
            }
            Expr::Vector(items) => {
                f.write_str("[")?;
                write_list(f, items)?;
                f.write_str("]")
            }
            Expr::Complex(re, im) => write!(f, "{{{re}, {im}}}"),
            Expr::Matrix(d, r, c) => write!(f, "{{{d}, {r}, {c}}}"),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            TokenKind::String => f.write_str(&quote(&self.text)),
            _ => f.write_str(&self.text),
        }
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::Expr(e) => write!(f, "{e}"),
            Statement::Assign { target, value } => write!(f, "{target} = {value}"),
            Statement::Command { name, args } => {
                f.write_str(name)?;
                for w in args {
                    write!(f, " {w}")?;
                }
                Ok(())
            }
        }
    }
}
