use std::sync::Arc;

use crate::bignum::{format_real, BigComplex, Real};
use crate::dataset::Dataset;
use crate::linalg::{NumMatrix, NumVector};

/// Result of evaluating an expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Real(Real),
    Complex(BigComplex),
    Vector(NumVector),
    Matrix(NumMatrix),
    /// A dataset together with the store name it was imported under.
    Dataset(String, Arc<Dataset>),
    /// Name of a chart in the session store.
    Chart(String),
    /// Name of a report in the session store.
    Report(String),
    Text(String),
    Bool(bool),
    Unit,
}

impl Value {
    pub fn int(v: i64) -> Value {
        Value::Real(Real::int(v))
    }

    pub fn type_name(&self) -> &'static str {
        match self {
            Value::Real(Real::Int(_)) => "integer",
            Value::Real(Real::Float(_)) => "float",
            Value::Complex(_) => "complex",
            Value::Vector(_) => "vector",
            Value::Matrix(_) => "matrix",
            Value::Dataset(..) => "dataset",
            Value::Chart(_) => "chart",
            Value::Report(_) => "report",
            Value::Text(_) => "text",
            Value::Bool(_) => "boolean",
            Value::Unit => "nothing",
        }
    }
}

/// Formats a value at `digits` significant digits.
pub fn render_value(v: &Value, digits: u32) -> String {
    match v {
        Value::Real(r) => format_real(r, digits),
        Value::Complex(c) => render_complex(c, digits),
        Value::Vector(v) => render_vector(v, digits),
        Value::Matrix(m) => render_matrix(m, digits),
        Value::Dataset(name, d) => format!("dataset {name}: {}", d.summary()),
        Value::Chart(name) => format!("chart {name}"),
        Value::Report(name) => format!("report {name}"),
        Value::Text(s) => s.clone(),
        Value::Bool(b) => b.to_string(),
        Value::Unit => String::new(),
    }
}

/// `a + i b` or `a - i b`; a zero imaginary part prints the real part alone.
pub fn render_complex(c: &BigComplex, digits: u32) -> String {
    let re = format_real(&c.re, digits);
    if c.im.is_zero() {
        return re;
    }
    let sign = if c.im.is_negative() { '-' } else { '+' };
    format!("{re} {sign} i {}", format_real(&c.im.abs(), digits))
}

pub fn render_vector(v: &NumVector, digits: u32) -> String {
    let items: Vec<String> = v.elems().iter().map(|e| format_real(e, digits)).collect();
    format!("[{}]", items.join(", "))
}

/// Rows in brackets with every column right-aligned to its widest cell.
pub fn render_matrix(m: &NumMatrix, digits: u32) -> String {
    let cells: Vec<Vec<String>> = (0..m.rows())
        .map(|r| m.row(r).iter().map(|e| format_real(e, digits)).collect())
        .collect();
    let widths: Vec<usize> = (0..m.cols())
        .map(|c| cells.iter().map(|row| row[c].len()).max().unwrap_or(0))
        .collect();
    let last = cells.len() - 1;
    let lines: Vec<String> = cells
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let body: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(s, &w)| format!("{s:>w$}"))
                .collect();
            let open = if i == 0 { "[ " } else { "  " };
            let close = if i == last { " ]" } else { "" };
            format!("{open}{}{close}", body.join("  "))
        })
        .collect();
    lines.join("\n")
}

/// Single-line preview for object listings.
pub fn preview(v: &Value, digits: u32) -> String {
    const LIMIT: usize = 60;
    let text = match v {
        Value::Matrix(m) => format!("{}x{} matrix", m.rows(), m.cols()),
        Value::Dataset(_, d) => d.summary(),
        other => render_value(other, digits),
    };
    if text.chars().count() > LIMIT {
        let cut: String = text.chars().take(LIMIT).collect();
        format!("{cut}...")
    } else {
        text
    }
}
