use std::collections::BTreeMap;

use super::functions::{self, Call};
use super::session::Session;
use super::value::Value;
use crate::bignum::{parse_decimal, BigComplex, BigFloat, NumError, PrecisionContext, Real};
use crate::error::{Error, Result};
use crate::lang::{BinOp, Expr};
use crate::linalg::{ArithOp, NumMatrix, NumVector, MAX_SEQUENCE_LEN};
use crate::report::Report;
use crate::viz::ChartSpec;

/// Objects created while evaluating one statement, committed only if the
/// statement succeeds.
#[derive(Default)]
pub(crate) struct Staging {
    pub charts: Vec<(String, ChartSpec)>,
    pub reports: Vec<(String, Report)>,
    pub chart_counter: u64,
    pub report_counter: u64,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Staging {
    /// An explicit name (replacing any chart of that name) or the next free
    /// `chart_N`.
    pub fn chart_name(&mut self, s: &Session, requested: Option<&str>) -> Result<String> {
        if let Some(r) = requested {
            let r = r.to_ascii_lowercase();
            if !valid_name(&r) {
                return Err(Error::Domain(format!("'{r}' is not a valid chart name")));
            }
            return Ok(r);
        }
        let mut n = self.chart_counter.max(s.chart_counter);
        loop {
            n += 1;
            let name = format!("chart_{n}");
            if !s.charts.contains_key(&name) && !self.charts.iter().any(|c| c.0 == name) {
                self.chart_counter = n;
                return Ok(name);
            }
        }
    }

    pub fn report_name(&mut self, s: &Session, requested: Option<&str>) -> Result<String> {
        if let Some(r) = requested {
            let r = r.to_ascii_lowercase();
            if !valid_name(&r) {
                return Err(Error::Domain(format!("'{r}' is not a valid report name")));
            }
            return Ok(r);
        }
        let mut n = self.report_counter.max(s.report_counter);
        loop {
            n += 1;
            let name = format!("report_{n}");
            if !s.reports.contains_key(&name) && !self.reports.iter().any(|c| c.0 == name) {
                self.report_counter = n;
                return Ok(name);
            }
        }
    }
}

pub(crate) fn eval_expr(e: &Expr, s: &Session, st: &mut Staging) -> Result<Value> {
    let ctx = &s.ctx;
    match e {
        Expr::Number(lit) => Ok(Value::Real(parse_decimal(lit, ctx)?)),
        Expr::Str(t) => Ok(Value::Text(t.clone())),
        Expr::Bool(b) => Ok(Value::Bool(*b)),
        Expr::Var(name) => s.lookup(name),
        Expr::Neg(x) => negate(eval_expr(x, s, st)?, ctx),
        Expr::Binary(op, l, r) => {
            let a = eval_expr(l, s, st)?;
            let b = eval_expr(r, s, st)?;
            binary(*op, a, b, ctx)
        }
        Expr::Call { name, args, options } => {
            let f = functions::lookup(name).ok_or_else(|| Error::UndefinedFunction(name.clone()))?;
            let args = args
                .iter()
                .map(|a| eval_expr(a, s, st))
                .collect::<Result<Vec<_>>>()?;
            let mut opts = BTreeMap::new();
            for (k, v) in options {
                opts.insert(k.clone(), eval_expr(v, s, st)?);
            }
            let mut call = Call {
                session: s,
                staging: st,
                name: f.name,
            };
            functions::invoke(f, &mut call, args, opts)
        }
        Expr::Index(base, idx) => {
            let b = eval_expr(base, s, st)?;
            let i = eval_expr(idx, s, st)?;
            let Value::Dataset(_, d) = &b else {
                return Err(Error::Type(format!(
                    "only datasets can be indexed, not a {}",
                    b.type_name()
                )));
            };
            let index = match &i {
                Value::Real(Real::Int(n)) => n.to_i64().unwrap_or(i64::MAX),
                other => {
                    return Err(Error::Type(format!(
                        "a column index must be an integer, not a {}",
                        other.type_name()
                    )))
                }
            };
            Ok(Value::Vector(d.column(index)?))
        }
        Expr::Vector(items) => {
            let mut elems = Vec::with_capacity(items.len());
            for it in items {
                match eval_expr(it, s, st)? {
                    Value::Real(r) => elems.push(r),
                    other => {
                        return Err(Error::Type(format!(
                            "vector components must be real numbers, not {}",
                            other.type_name()
                        )))
                    }
                }
            }
            Ok(Value::Vector(NumVector::from_reals(elems, ctx)?))
        }
        Expr::Complex(re, im) => {
            let re = real_part_of_literal(eval_expr(re, s, st)?)?;
            let im = real_part_of_literal(eval_expr(im, s, st)?)?;
            Ok(Value::Complex(BigComplex::new(re, im)))
        }
        Expr::Matrix(data, r, c) => {
            let data = match eval_expr(data, s, st)? {
                Value::Vector(v) => v,
                other => {
                    return Err(Error::Type(format!(
                        "matrix data must be a vector, not {}",
                        other.type_name()
                    )))
                }
            };
            let r = dimension(eval_expr(r, s, st)?, "rows")?;
            let c = dimension(eval_expr(c, s, st)?, "columns")?;
            if r.saturating_mul(c) as u64 > MAX_SEQUENCE_LEN {
                return Err(Error::Range(format!("a {r}x{c} matrix is too large")));
            }
            Ok(Value::Matrix(NumMatrix::construct(&data, r, c, ctx)?))
        }
    }
}

fn real_part_of_literal(v: Value) -> Result<Real> {
    match v {
        Value::Real(r) => Ok(r),
        other => Err(Error::Type(format!(
            "complex parts must be real numbers, not {}",
            other.type_name()
        ))),
    }
}

fn dimension(v: Value, what: &str) -> Result<usize> {
    match v {
        Value::Real(Real::Int(n)) => match n.to_i64() {
            Some(k) if k >= 1 => Ok(k as usize),
            _ => Err(Error::Dimension(format!("matrix {what} must be positive, got {n}"))),
        },
        other => Err(Error::Type(format!(
            "matrix {what} must be an integer, not {}",
            other.type_name()
        ))),
    }
}

pub(crate) fn negate(v: Value, ctx: &PrecisionContext) -> Result<Value> {
    let flip = |v: &NumVector| NumVector::from_reals(v.elems().iter().map(Real::neg).collect(), ctx);
    Ok(match v {
        Value::Real(r) => Value::Real(r.neg()),
        Value::Complex(c) => Value::Complex(c.neg()),
        Value::Vector(v) => Value::Vector(flip(&v)?),
        Value::Matrix(m) => Value::Matrix(NumMatrix::construct(&flip(&m.flatten())?, m.rows(), m.cols(), ctx)?),
        other => return Err(Error::Type(format!("cannot negate {}", other.type_name()))),
    })
}

fn arith(op: BinOp) -> ArithOp {
    match op {
        BinOp::Add => ArithOp::Add,
        BinOp::Sub => ArithOp::Sub,
        BinOp::Mul => ArithOp::Mul,
        BinOp::Div => ArithOp::Div,
        BinOp::Pow => ArithOp::Pow,
    }
}

fn type_error(op: BinOp, a: &Value, b: &Value) -> Error {
    Error::Type(format!(
        "operator '{}' is not defined for {} and {}",
        op.symbol(),
        a.type_name(),
        b.type_name()
    ))
}

fn complex_op(op: BinOp, a: &BigComplex, b: &BigComplex, ctx: &PrecisionContext) -> Result<BigComplex> {
    Ok(match op {
        BinOp::Add => a.add(b, ctx)?,
        BinOp::Sub => a.sub(b, ctx)?,
        BinOp::Mul => a.mul(b, ctx)?,
        BinOp::Div => a.div(b, ctx)?,
        BinOp::Pow => {
            let e = match (&b.im.is_zero(), b.re.to_int().and_then(|i| i.to_i64())) {
                (true, Some(e)) => e,
                _ => {
                    return Err(Error::Domain(
                        "complex powers need an integer exponent".into(),
                    ))
                }
            };
            a.powi(e, ctx)?
        }
    })
}

/// `m^k` by repeated squaring; a negative `k` inverts first.
fn matrix_power(m: &NumMatrix, k: &Real, ctx: &PrecisionContext) -> Result<NumMatrix> {
    let k = k
        .to_int()
        .and_then(|i| i.to_i64())
        .ok_or_else(|| Error::Domain("matrix powers need an integer exponent".into()))?;
    if m.rows() != m.cols() {
        return Err(Error::Dimension(format!(
            "matrix power needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let mut base = if k < 0 { m.invert(ctx)? } else { m.clone() };
    let mut e = k.unsigned_abs();
    let mut acc = NumMatrix::identity(m.rows());
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&base, ctx)?;
        }
        e >>= 1;
        if e > 0 {
            base = base.mul(&base, ctx)?;
        }
    }
    Ok(acc)
}

/// Operator dispatch by operand classes.
pub(crate) fn binary(op: BinOp, a: Value, b: Value, ctx: &PrecisionContext) -> Result<Value> {
    use Value::*;
    let ao = arith(op);
    match (&a, &b) {
        (Real(x), Real(y)) => Ok(Real(ao.apply(x, y, ctx)?)),
        (Complex(x), Complex(y)) => Ok(Complex(complex_op(op, x, y, ctx)?)),
        (Complex(x), Real(y)) => Ok(Complex(complex_op(op, x, &BigComplex::from_real(y.clone()), ctx)?)),
        (Real(x), Complex(y)) => Ok(Complex(complex_op(op, &BigComplex::from_real(x.clone()), y, ctx)?)),
        (Vector(v), Real(x)) => Ok(Vector(v.broadcast(ao, x, false, ctx)?)),
        (Real(x), Vector(v)) => Ok(Vector(v.broadcast(ao, x, true, ctx)?)),
        (Vector(v), Vector(w)) => Ok(Vector(v.zip(ao, w, ctx)?)),
        (Matrix(m), Matrix(n)) => match op {
            BinOp::Add | BinOp::Sub => Ok(Matrix(m.zip(ao, n, ctx)?)),
            BinOp::Mul => Ok(Matrix(m.mul(n, ctx)?)),
            _ => Err(type_error(op, &a, &b)),
        },
        (Matrix(m), Real(x)) => match op {
            BinOp::Pow => Ok(Matrix(matrix_power(m, x, ctx)?)),
            _ => Ok(Matrix(m.scalar(ao, x, false, ctx)?)),
        },
        (Real(x), Matrix(m)) => match op {
            BinOp::Pow => Err(type_error(op, &a, &b)),
            _ => Ok(Matrix(m.scalar(ao, x, true, ctx)?)),
        },
        (Matrix(m), Vector(v)) if op == BinOp::Mul => Ok(Vector(m.mul_vector(v, ctx)?)),
        _ => Err(type_error(op, &a, &b)),
    }
}

/// Applies a real function to a scalar, or to each component of a vector
/// or matrix.
pub(crate) fn map_real<F>(v: &Value, ctx: &PrecisionContext, fname: &str, f: F) -> Result<Value>
where
    F: Fn(&Real) -> Result<Real>,
{
    match v {
        Value::Real(r) => Ok(Value::Real(f(r)?)),
        Value::Vector(vec) => Ok(Value::Vector(vec.map(ctx, &f)?)),
        Value::Matrix(m) => {
            let flat = m.flatten().map(ctx, &f)?;
            Ok(Value::Matrix(NumMatrix::construct(&flat, m.rows(), m.cols(), ctx)?))
        }
        other => Err(Error::Type(format!(
            "{fname} needs a number, vector or matrix, not {}",
            other.type_name()
        ))),
    }
}

pub(crate) fn float_fn(
    r: &Real,
    ctx: &PrecisionContext,
    f: fn(&BigFloat, &PrecisionContext) -> std::result::Result<BigFloat, NumError>,
) -> Result<Real> {
    Ok(Real::Float(f(&r.to_float(ctx)?, ctx)?))
}
