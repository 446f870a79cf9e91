use std::collections::BTreeMap;
use std::sync::Arc;

use super::eval::{float_fn, map_real, Staging};
use super::session::Session;
use super::value::Value;
use crate::bignum::{elementary, pi_bbp, BigFloat, NumError, PrecisionContext, Real};
use crate::error::{Error, Result};
use crate::linalg::{sequence, NumMatrix, NumVector};
use crate::report::{ttest_report, ttest_summary, ztest_report, ztest_summary, ReportKind};
use crate::stats;
use crate::viz::{ChartKind, ChartSpec};

pub(crate) type Options = BTreeMap<String, Value>;
type Handler = fn(&mut Call, Vec<Value>, &Options) -> Result<Value>;

/// Evaluation context handed to a function body.
pub(crate) struct Call<'a> {
    pub session: &'a Session,
    pub staging: &'a mut Staging,
    pub name: &'static str,
}

impl Call<'_> {
    fn ctx(&self) -> &PrecisionContext {
        &self.session.ctx
    }
}

/// A built-in function with its arity, accepted options and help text.
pub struct FunctionSpec {
    pub name: &'static str,
    pub signature: &'static str,
    pub summary: &'static str,
    pub example: &'static str,
    pub min_args: usize,
    pub max_args: usize,
    pub options: &'static [&'static str],
    handler: Handler,
}

macro_rules! func {
    ($name:literal, $sig:literal, $sum:literal, $ex:literal, $min:literal..$max:literal, $opts:expr, $h:expr) => {
        FunctionSpec {
            name: $name,
            signature: $sig,
            summary: $sum,
            example: $ex,
            min_args: $min,
            max_args: $max,
            options: $opts,
            handler: $h,
        }
    };
}

static REGISTRY: &[FunctionSpec] = &[
    func!("append", "append(vector, value)", "Vector with a number or the components of another vector appended.", "append([1, -2], 5)", 2..2, &[], h_append),
    func!("cos", "cos(x)", "Cosine of x in radians; applied to each component of a vector or matrix.", "cos(0)", 1..1, &[], h_cos),
    func!("det", "det(matrix)", "Determinant of a square matrix; exact for integer matrices.", "det({[1, 3, -1, 4], 2, 2})", 1..1, &[], h_det),
    func!("dotprod", "dotprod(vector, vector)", "Scalar product of two vectors of equal length.", "dotprod([1, -2], [-3, 4])", 2..2, &[], h_dotprod),
    func!("exp", "exp(x)", "Exponential function; applied to each component of a vector or matrix.", "exp(1)", 1..1, &[], h_exp),
    func!("frequency", "frequency(vector, bins=n, title=\"...\", xtitle=\"...\", ytitle=\"...\", name=\"...\")", "Histogram chart of the values; ceil(sqrt(n)) equal-width bins by default.", "frequency([1, 2, 2, 3, 3, 3], bins=3)", 1..1, &["bins", "title", "xtitle", "ytitle", "name"], h_frequency),
    func!("im", "im(z)", "Imaginary part of a complex number (0 for real numbers).", "im({2, -1} * {-1, 3})", 1..1, &[], h_im),
    func!("invert", "invert(matrix)", "Inverse of a square matrix by Gaussian elimination with partial pivoting.", "invert({[1, 3, -1, 4], 2, 2})", 1..1, &[], h_invert),
    func!("log", "log(x)", "Natural logarithm, x > 0; applied to each component of a vector or matrix.", "log(2)", 1..1, &[], h_log),
    func!("mean", "mean(vector)", "Arithmetic mean of the components.", "mean([9, 3, -1, -2, 4, 5])", 1..1, &[], h_mean),
    func!("pi", "pi()", "The constant pi at the current precision (Bailey-Borwein-Plouffe series).", "pi()", 0..0, &[], h_pi),
    func!("plot", "plot(x, y, title=\"...\", xtitle=\"...\", ytitle=\"...\", kind=\"line\"|\"scatter\", name=\"...\")", "Chart of y against x; a dataset argument plots its column 1 against column 0.", "plot($x, $y, xtitle=\"x [rad]\", ytitle=\"cos(x)*sin(x)\")", 1..2, &["title", "xtitle", "ytitle", "kind", "name"], h_plot),
    func!("re", "re(z)", "Real part of a complex number.", "re({2, -3})", 1..1, &[], h_re),
    func!("sequence", "sequence(start, stop, step)", "Vector start, start+step, ... up to stop; step defaults to 1.", "sequence(-1, 1, 0.1)", 2..3, &[], h_sequence),
    func!("sin", "sin(x)", "Sine of x in radians; applied to each component of a vector or matrix.", "sin($x)", 1..1, &[], h_sin),
    func!("sqrt", "sqrt(x)", "Square root, x >= 0; applied to each component of a vector or matrix.", "sqrt(2)", 1..1, &[], h_sqrt),
    func!("stddev", "stddev(vector)", "Sample standard deviation (n - 1 denominator).", "stddev([9, 3, -1, -2, 4, 5])", 1..1, &[], h_stddev),
    func!("trace", "trace(matrix)", "Sum of the diagonal of a square matrix.", "trace({[1, 3, -1, 4], 2, 2})", 1..1, &[], h_trace),
    func!("transpose", "transpose(matrix)", "Matrix with rows and columns swapped.", "transpose({[1, 2, 3, 4, 5, 6], 2, 3})", 1..1, &[], h_transpose),
    func!("ttest", "ttest(vector, mu0, report=true|false, format=\"html\"|\"text\", name=\"...\")", "Two-sided one-sample t-test of mean = mu0; optionally creates a report.", "ttest([9, 3, -1, -2, 4, 5], 2)", 2..2, &["report", "format", "name"], h_ttest),
    func!("ztest", "ztest(vector, mu0, sigma, report=true|false, format=\"html\"|\"text\", name=\"...\")", "Two-sided one-sample z-test of mean = mu0 with known sigma; optionally creates a report.", "ztest($x, 2, 3, report=true)", 3..3, &["report", "format", "name"], h_ztest),
];

pub fn registry() -> &'static [FunctionSpec] {
    REGISTRY
}

pub fn lookup(name: &str) -> Option<&'static FunctionSpec> {
    let name = name.to_ascii_lowercase();
    REGISTRY.iter().find(|f| f.name == name)
}

pub(crate) fn invoke(f: &'static FunctionSpec, call: &mut Call, args: Vec<Value>, opts: Options) -> Result<Value> {
    if args.len() < f.min_args || args.len() > f.max_args {
        let expected = if f.min_args == f.max_args {
            format!("{}", f.min_args)
        } else {
            format!("{} to {}", f.min_args, f.max_args)
        };
        return Err(Error::Type(format!(
            "{} takes {expected} argument{}, got {}; usage: {}",
            f.name,
            if f.max_args == 1 { "" } else { "s" },
            args.len(),
            f.signature
        )));
    }
    if let Some(bad) = opts.keys().find(|k| !f.options.contains(&k.as_str())) {
        return Err(Error::Type(format!("{} has no option '{bad}'", f.name)));
    }
    (f.handler)(call, args, &opts)
}

fn vector_arg(c: &Call, v: &Value, pos: usize) -> Result<NumVector> {
    match v {
        Value::Vector(v) => Ok(v.clone()),
        other => Err(Error::Type(format!(
            "{}: argument {} must be a vector, not {}",
            c.name,
            pos + 1,
            other.type_name()
        ))),
    }
}

fn matrix_arg<'v>(c: &Call, v: &'v Value) -> Result<&'v NumMatrix> {
    match v {
        Value::Matrix(m) => Ok(m),
        other => Err(Error::Type(format!("{} needs a matrix, not {}", c.name, other.type_name()))),
    }
}

fn real_arg(c: &Call, v: &Value, pos: usize) -> Result<Real> {
    match v {
        Value::Real(r) => Ok(r.clone()),
        other => Err(Error::Type(format!(
            "{}: argument {} must be a real number, not {}",
            c.name,
            pos + 1,
            other.type_name()
        ))),
    }
}

fn opt_text(c: &Call, o: &Options, key: &str) -> Result<Option<String>> {
    match o.get(key) {
        None => Ok(None),
        Some(Value::Text(t)) => Ok(Some(t.clone())),
        Some(other) => Err(Error::Type(format!(
            "{}: option {key} must be text, not {}",
            c.name,
            other.type_name()
        ))),
    }
}

fn opt_bool(c: &Call, o: &Options, key: &str) -> Result<bool> {
    match o.get(key) {
        None => Ok(false),
        Some(Value::Bool(b)) => Ok(*b),
        Some(other) => Err(Error::Type(format!(
            "{}: option {key} must be true or false, not {}",
            c.name,
            other.type_name()
        ))),
    }
}

fn opt_count(c: &Call, o: &Options, key: &str) -> Result<Option<usize>> {
    match o.get(key) {
        None => Ok(None),
        Some(Value::Real(Real::Int(n))) => match n.to_i64() {
            Some(k) if k >= 1 => Ok(Some(k as usize)),
            _ => Err(Error::Domain(format!("{}: option {key} must be positive", c.name))),
        },
        Some(other) => Err(Error::Type(format!(
            "{}: option {key} must be an integer, not {}",
            c.name,
            other.type_name()
        ))),
    }
}

fn elementwise(
    c: &mut Call,
    args: Vec<Value>,
    f: fn(&BigFloat, &PrecisionContext) -> std::result::Result<BigFloat, NumError>,
) -> Result<Value> {
    let ctx = c.ctx().clone();
    map_real(&args[0], &ctx, c.name, |r| float_fn(r, &ctx, f))
}

fn h_log(c: &mut Call, a: Vec<Value>, _: &Options) -> Result<Value> {
    elementwise(c, a, elementary::log)
}

fn h_exp(c: &mut Call, a: Vec<Value>, _: &Options) -> Result<Value> {
    elementwise(c, a, elementary::exp)
}

fn h_sqrt(c: &mut Call, a: Vec<Value>, _: &Options) -> Result<Value> {
    elementwise(c, a, elementary::sqrt)
}

fn h_sin(c: &mut Call, a: Vec<Value>, _: &Options) -> Result<Value> {
    elementwise(c, a, elementary::sin)
}

fn h_cos(c: &mut Call, a: Vec<Value>, _: &Options) -> Result<Value> {
    elementwise(c, a, elementary::cos)
}

fn h_pi(c: &mut Call, _: Vec<Value>, _: &Options) -> Result<Value> {
    Ok(Value::Real(Real::Float(pi_bbp(c.ctx())?)))
}

fn h_re(c: &mut Call, a: Vec<Value>, _: &Options) -> Result<Value> {
    match &a[0] {
        Value::Complex(z) => Ok(Value::Real(z.re.clone())),
        Value::Real(r) => Ok(Value::Real(r.clone())),
        other => Err(Error::Type(format!("{} needs a number, not {}", c.name, other.type_name()))),
    }
}

fn h_im(c: &mut Call, a: Vec<Value>, _: &Options) -> Result<Value> {
    match &a[0] {
        Value::Complex(z) => Ok(Value::Real(z.im.clone())),
        Value::Real(_) => Ok(Value::int(0)),
        other => Err(Error::Type(format!("{} needs a number, not {}", c.name, other.type_name()))),
    }
}

fn h_append(c: &mut Call, a: Vec<Value>, _: &Options) -> Result<Value> {
    let v = vector_arg(c, &a[0], 0)?;
    let tail = match &a[1] {
        Value::Real(r) => vec![r.clone()],
        Value::Vector(w) => w.elems().to_vec(),
        other => {
            return Err(Error::Type(format!(
                "append: cannot append {} to a vector",
                other.type_name()
            )))
        }
    };
    Ok(Value::Vector(v.append(&tail, c.ctx())?))
}

fn h_dotprod(c: &mut Call, a: Vec<Value>, _: &Options) -> Result<Value> {
    let x = vector_arg(c, &a[0], 0)?;
    let y = vector_arg(c, &a[1], 1)?;
    if x.is_empty() && y.is_empty() {
        return Err(Error::Dimension("dotprod needs non-empty vectors".into()));
    }
    Ok(Value::Real(x.dot(&y, c.ctx())?))
}

fn h_invert(c: &mut Call, a: Vec<Value>, _: &Options) -> Result<Value> {
    Ok(Value::Matrix(matrix_arg(c, &a[0])?.invert(c.ctx())?))
}

fn h_det(c: &mut Call, a: Vec<Value>, _: &Options) -> Result<Value> {
    Ok(Value::Real(matrix_arg(c, &a[0])?.det(c.ctx())?))
}

fn h_trace(c: &mut Call, a: Vec<Value>, _: &Options) -> Result<Value> {
    Ok(Value::Real(matrix_arg(c, &a[0])?.trace(c.ctx())?))
}

fn h_transpose(c: &mut Call, a: Vec<Value>, _: &Options) -> Result<Value> {
    Ok(Value::Matrix(matrix_arg(c, &a[0])?.transpose()))
}

fn h_sequence(c: &mut Call, a: Vec<Value>, _: &Options) -> Result<Value> {
    let start = real_arg(c, &a[0], 0)?;
    let stop = real_arg(c, &a[1], 1)?;
    let step = match a.get(2) {
        Some(v) => real_arg(c, v, 2)?,
        None => Real::int(1),
    };
    Ok(Value::Vector(sequence(&start, &stop, &step, c.ctx())?))
}

fn h_mean(c: &mut Call, a: Vec<Value>, _: &Options) -> Result<Value> {
    Ok(Value::Real(stats::mean(&vector_arg(c, &a[0], 0)?, c.ctx())?))
}

fn h_stddev(c: &mut Call, a: Vec<Value>, _: &Options) -> Result<Value> {
    Ok(Value::Real(stats::stddev(&vector_arg(c, &a[0], 0)?, c.ctx())?))
}

fn report_kind(c: &Call, o: &Options) -> Result<ReportKind> {
    match opt_text(c, o, "format")?.as_deref() {
        None | Some("html") => Ok(ReportKind::Html),
        Some("text") => Ok(ReportKind::Text),
        Some(other) => Err(Error::Domain(format!(
            "{}: unknown report format '{other}' (use \"html\" or \"text\")",
            c.name
        ))),
    }
}

fn h_ztest(c: &mut Call, a: Vec<Value>, o: &Options) -> Result<Value> {
    let v = vector_arg(c, &a[0], 0)?;
    let mu0 = real_arg(c, &a[1], 1)?;
    let sigma = real_arg(c, &a[2], 2)?;
    let digits = c.ctx().output_digits();
    let r = stats::ztest(&v, &mu0, &sigma, c.ctx())?;
    let kind = report_kind(c, o)?;
    if opt_bool(c, o, "report")? {
        let name = c.staging.report_name(c.session, opt_text(c, o, "name")?.as_deref())?;
        c.staging.reports.push((name, ztest_report(&r, digits, kind)));
    }
    Ok(Value::Text(ztest_summary(&r, digits)))
}

fn h_ttest(c: &mut Call, a: Vec<Value>, o: &Options) -> Result<Value> {
    let v = vector_arg(c, &a[0], 0)?;
    let mu0 = real_arg(c, &a[1], 1)?;
    let digits = c.ctx().output_digits();
    let r = stats::ttest(&v, &mu0, c.ctx())?;
    let kind = report_kind(c, o)?;
    if opt_bool(c, o, "report")? {
        let name = c.staging.report_name(c.session, opt_text(c, o, "name")?.as_deref())?;
        c.staging.reports.push((name, ttest_report(&r, digits, kind)));
    }
    Ok(Value::Text(ttest_summary(&r, digits)))
}

fn apply_titles(c: &Call, o: &Options, chart: &mut ChartSpec) -> Result<()> {
    chart.title = opt_text(c, o, "title")?;
    chart.xtitle = opt_text(c, o, "xtitle")?;
    chart.ytitle = opt_text(c, o, "ytitle")?;
    Ok(())
}

fn stage_chart(c: &mut Call, o: &Options, chart: ChartSpec) -> Result<Value> {
    let name = c.staging.chart_name(c.session, opt_text(c, o, "name")?.as_deref())?;
    c.staging.charts.push((name.clone(), chart));
    Ok(Value::Chart(name))
}

fn h_frequency(c: &mut Call, a: Vec<Value>, o: &Options) -> Result<Value> {
    let v = vector_arg(c, &a[0], 0)?;
    let h = stats::histogram(&v, opt_count(c, o, "bins")?)?;
    let mut chart = ChartSpec::histogram(&h);
    apply_titles(c, o, &mut chart)?;
    stage_chart(c, o, chart)
}

fn dataset_xy(c: &Call, d: &Arc<crate::dataset::Dataset>) -> Result<(NumVector, NumVector)> {
    if d.columns().len() < 2 {
        return Err(Error::Dimension(format!("{} needs a dataset with two columns", c.name)));
    }
    Ok((d.column(0)?, d.column(1)?))
}

fn h_plot(c: &mut Call, a: Vec<Value>, o: &Options) -> Result<Value> {
    let (x, y) = match (a.first(), a.get(1)) {
        (Some(Value::Dataset(_, d)), None) => dataset_xy(c, d)?,
        (Some(first), Some(second)) => (vector_arg(c, first, 0)?, vector_arg(c, second, 1)?),
        (Some(other), None) => {
            return Err(Error::Type(format!(
                "plot needs two vectors or a dataset, not a single {}",
                other.type_name()
            )))
        }
        (None, _) => unreachable!("arity checked"),
    };
    let kind = match opt_text(c, o, "kind")? {
        None => ChartKind::Line,
        Some(k) => match ChartKind::parse(&k) {
            Some(ChartKind::Histogram) | None => {
                return Err(Error::Domain(format!(
                    "plot: unknown kind '{k}' (use \"line\" or \"scatter\")"
                )))
            }
            Some(kind) => kind,
        },
    };
    let mut chart = ChartSpec::xy(kind, &x, &y)?;
    apply_titles(c, o, &mut chart)?;
    stage_chart(c, o, chart)
}
