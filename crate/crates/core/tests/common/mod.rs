//! Shared oracles and fixtures for the integration tests.
#![allow(dead_code)]

use std::io::{BufRead, BufReader, Write};
use std::net::{SocketAddr, TcpListener, TcpStream};
use std::path::{Path, PathBuf};
use std::process::Command;

use arbcalc::bignum::{BigFloat, Dyadic, Nat, PrecisionContext};
use arbcalc::lang::{BinOp, Expr, Statement, TokenKind, Word};
use arbcalc::service::{serve_listener, Response};
use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

pub fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

// ---- exact rational oracle -------------------------------------------------

fn pow2(k: u64) -> BigInt {
    BigInt::one() << k
}

pub fn nat_to_biguint(n: &Nat) -> BigUint {
    BigUint::from_slice(n.limbs())
}

pub fn dyadic_to_rational(d: &Dyadic) -> BigRational {
    let sign = if d.neg { Sign::Minus } else { Sign::Plus };
    let m = BigInt::from_biguint(sign, nat_to_biguint(&d.mag));
    if d.exp >= 0 {
        BigRational::from_integer(m << d.exp as u64)
    } else {
        BigRational::new(m, pow2(d.exp.unsigned_abs()))
    }
}

pub fn float_to_rational(x: &BigFloat) -> BigRational {
    dyadic_to_rational(&x.to_dyadic())
}

pub fn float_from_parts(neg: bool, mantissa: u64, exp: i64, ctx: &PrecisionContext) -> BigFloat {
    Dyadic {
        neg,
        mag: Nat::from_u64(mantissa),
        exp,
    }
    .round(ctx)
    .expect("in range")
}

fn bits(n: &BigInt) -> i64 {
    n.bits() as i64
}

/// `q` rounded to `p` significant bits, ties to even, as an exact rational.
pub fn round_nearest_even(q: &BigRational, p: u64) -> BigRational {
    if q.is_zero() {
        return q.clone();
    }
    let neg = q.is_negative();
    let a = q.abs();
    let scale = |e: i64| -> BigRational {
        if e >= 0 {
            &a / BigRational::from_integer(pow2(e as u64))
        } else {
            &a * BigRational::from_integer(pow2((-e) as u64))
        }
    };
    let lo = BigRational::from_integer(pow2(p - 1));
    let hi = BigRational::from_integer(pow2(p));
    let mut e = bits(a.numer()) - bits(a.denom()) - p as i64;
    let mut s = scale(e);
    while s >= hi {
        e += 1;
        s = scale(e);
    }
    while s < lo {
        e -= 1;
        s = scale(e);
    }
    let (fl, rem) = s.numer().div_rem(s.denom());
    let twice = rem * 2u32;
    let mut m = fl;
    match twice.cmp(s.denom()) {
        std::cmp::Ordering::Greater => m += 1u32,
        std::cmp::Ordering::Equal if m.is_odd() => m += 1u32,
        _ => {}
    }
    if m == pow2(p) {
        m = pow2(p - 1);
        e += 1;
    }
    let mut r = BigRational::from_integer(m);
    r = if e >= 0 {
        r * BigRational::from_integer(pow2(e as u64))
    } else {
        r / BigRational::from_integer(pow2((-e) as u64))
    };
    if neg {
        -r
    } else {
        r
    }
}

/// `|a - b| / |b|` as f64 (absolute when `b` is zero).
pub fn relative_gap(a: &BigRational, b: &BigRational) -> f64 {
    let d = (a - b).abs();
    let d = if b.is_zero() { d } else { d / b.abs() };
    rational_to_f64(&d)
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    if q.is_zero() {
        return 0.0;
    }
    let shift = bits(q.numer()) - bits(q.denom()) - 60;
    let scaled = if shift >= 0 {
        q / BigRational::from_integer(pow2(shift as u64))
    } else {
        q * BigRational::from_integer(pow2((-shift) as u64))
    };
    let int = scaled.to_integer();
    let (sign, digits) = int.to_u64_digits();
    let mag = digits.first().copied().unwrap_or(0) as f64;
    let v = mag * 2f64.powi(shift as i32);
    if sign == Sign::Minus {
        -v
    } else {
        v
    }
}

// ---- quadrature oracles ------------------------------------------------------

/// Composite Simpson rule with `n` (even) panels.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + h * i as f64);
    }
    s * h / 3.0
}

/// Two-sided standard normal tail `P(|Z| >= z)` by integrating the density
/// over `[0, |z|]`.
pub fn normal_two_sided(z: f64) -> f64 {
    let phi = |t: f64| (-t * t / 2.0).exp() / (2.0 * std::f64::consts::PI).sqrt();
    1.0 - 2.0 * simpson(phi, 0.0, z.abs(), 20_000)
}

/// `Γ(k/2)` for a positive integer `k`, from the factorial closed forms.
pub fn gamma_half(k: u64) -> f64 {
    if k % 2 == 0 {
        (1..k / 2).map(|i| i as f64).product()
    } else {
        let n = (k - 1) / 2;
        let mut g = std::f64::consts::PI.sqrt();
        for i in 0..n {
            g *= i as f64 + 0.5;
        }
        g
    }
}

/// Two-sided Student-t tail `P(|T| >= t)` with `df` degrees of freedom.
pub fn student_two_sided(t: f64, df: u64) -> f64 {
    let nu = df as f64;
    let c = gamma_half(df + 1) / ((nu * std::f64::consts::PI).sqrt() * gamma_half(df));
    let f = |x: f64| c * (1.0 + x * x / nu).powf(-(nu + 1.0) / 2.0);
    1.0 - 2.0 * simpson(f, 0.0, t.abs(), 40_000)
}

// ---- statement corpus ----------------------------------------------------------

/// Example scripts in name order, as `(file name, source)`.
pub fn corpus() -> Vec<(String, String)> {
    let dir = manifest_dir().join("examples/scripts");
    let mut files: Vec<PathBuf> = std::fs::read_dir(&dir)
        .expect("scripts directory")
        .map(|e| e.expect("dir entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "arb"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| {
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            (name, std::fs::read_to_string(&p).expect("readable script"))
        })
        .collect()
}

/// Uppercases everything outside string literals.
pub fn uppercase_code(src: &str) -> String {
    let mut out = String::new();
    let mut in_str = false;
    let mut escaped = false;
    for c in src.chars() {
        if in_str {
            out.push(c);
            match (escaped, c) {
                (true, _) => escaped = false,
                (false, '\\') => escaped = true,
                (false, '"') => in_str = false,
                _ => {}
            }
        } else {
            if c == '"' {
                in_str = true;
            }
            out.push(c.to_ascii_uppercase());
        }
    }
    out
}

pub struct BatchRun {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the `arbcalc` binary on a script from the crate directory.
pub fn cli_batch(script: &Path, args: &[&str]) -> BatchRun {
    let out = Command::new(env!("CARGO_BIN_EXE_arbcalc"))
        .current_dir(manifest_dir())
        .arg("--script")
        .arg(script)
        .args(args)
        .output()
        .expect("binary runs");
    BatchRun {
        status: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

// ---- protocol client -------------------------------------------------------------

pub fn start_service() -> SocketAddr {
    let listener = TcpListener::bind("127.0.0.1:0").expect("bind");
    let addr = listener.local_addr().expect("addr");
    std::thread::spawn(move || serve_listener(listener, PrecisionContext::default()));
    addr
}

pub struct Client {
    reader: BufReader<TcpStream>,
    writer: TcpStream,
}

impl Client {
    pub fn connect(addr: SocketAddr) -> Client {
        let stream = TcpStream::connect(addr).expect("connect");
        Client {
            writer: stream.try_clone().expect("clone"),
            reader: BufReader::new(stream),
        }
    }

    pub fn send(&mut self, request: &serde_json::Value) -> Response {
        let mut line = request.to_string();
        line.push('\n');
        self.writer.write_all(line.as_bytes()).expect("write");
        self.recv()
    }

    pub fn recv(&mut self) -> Response {
        let mut line = String::new();
        self.reader.read_line(&mut line).expect("read");
        serde_json::from_str(&line).expect("response is JSON")
    }

    pub fn eval(&mut self, id: &str, source: &str) -> Response {
        self.send(&serde_json::json!({"id": id, "kind": "eval", "source": source}))
    }

    pub fn raw(&mut self, line: &str) -> Response {
        self.writer.write_all(line.as_bytes()).expect("write");
        self.writer.write_all(b"\n").expect("write");
        self.recv()
    }
}

/// Text items of an eval response in the form the CLI prints them.
pub fn text_lines(r: &Response) -> String {
    r.items
        .as_deref()
        .unwrap_or_default()
        .iter()
        .filter(|i| i.tag == "text")
        .map(|i| format!("{}\n", i.text))
        .collect()
}

// ---- random statements -------------------------------------------------------------

const NAMES: &[&str] = &["log", "sqrt", "plot", "f", "g2", "my_fn", "sequence"];
const VARS: &[&str] = &["$x", "$y", "$myvar", "$a_1", "$z9"];
const OPTS: &[&str] = &["title", "bins", "report", "xtitle"];

fn number(rng: &mut impl Rng) -> String {
    match rng.gen_range(0..4) {
        0 => rng.gen_range(0..1000).to_string(),
        1 => format!("{}.{}", rng.gen_range(0..100), rng.gen_range(0..1000)),
        2 => format!("{}e{}", rng.gen_range(1..10), rng.gen_range(-5..5)),
        _ => format!(".{}", rng.gen_range(1..100)),
    }
}

fn string(rng: &mut impl Rng) -> String {
    let pool = ['a', 'Z', ' ', '"', '\\', 'x', '[', '%', '/'];
    (0..rng.gen_range(0..6)).map(|_| pool[rng.gen_range(0..pool.len())]).collect()
}

pub fn random_expr(rng: &mut impl Rng, depth: u32) -> Expr {
    let leaf = depth == 0 || rng.gen_bool(0.3);
    if leaf {
        return match rng.gen_range(0..5) {
            0 | 1 => Expr::Number(number(rng)),
            2 => Expr::Var(VARS[rng.gen_range(0..VARS.len())].into()),
            3 => Expr::Str(string(rng)),
            _ => Expr::Bool(rng.gen()),
        };
    }
    let sub = |rng: &mut _| Box::new(random_expr(rng, depth - 1));
    match rng.gen_range(0..8) {
        0 => Expr::Neg(sub(rng)),
        1 | 2 => {
            let ops = [BinOp::Add, BinOp::Sub, BinOp::Mul, BinOp::Div, BinOp::Pow];
            Expr::Binary(ops[rng.gen_range(0..ops.len())], sub(rng), sub(rng))
        }
        3 => {
            let n = rng.gen_range(0..3);
            let args = (0..n).map(|_| random_expr(rng, depth - 1)).collect();
            let mut options: Vec<(String, Expr)> = Vec::new();
            for name in OPTS {
                if rng.gen_bool(0.2) {
                    options.push((name.to_string(), random_expr(rng, depth - 1)));
                }
            }
            Expr::Call {
                name: NAMES[rng.gen_range(0..NAMES.len())].into(),
                args,
                options,
            }
        }
        4 => Expr::Index(sub(rng), sub(rng)),
        5 => Expr::Vector((0..rng.gen_range(0..4)).map(|_| random_expr(rng, depth - 1)).collect()),
        6 => Expr::Complex(sub(rng), sub(rng)),
        _ => Expr::Matrix(sub(rng), sub(rng), sub(rng)),
    }
}

pub fn random_statement(rng: &mut impl Rng) -> Statement {
    match rng.gen_range(0..5) {
        0 => Statement::Assign {
            target: VARS[rng.gen_range(0..VARS.len())].into(),
            value: random_expr(rng, 4),
        },
        1 => {
            let args = (0..rng.gen_range(0..4))
                .map(|_| match rng.gen_range(0..4) {
                    0 => Word {
                        kind: TokenKind::Number,
                        text: number(rng),
                    },
                    1 => Word {
                        kind: TokenKind::String,
                        text: string(rng),
                    },
                    2 => Word {
                        kind: TokenKind::Variable,
                        text: VARS[rng.gen_range(0..VARS.len())].into(),
                    },
                    _ => Word {
                        kind: TokenKind::Identifier,
                        text: NAMES[rng.gen_range(0..NAMES.len())].into(),
                    },
                })
                .collect();
            Statement::Command {
                name: ["help", "precision", "objects", "export"][rng.gen_range(0..4)].into(),
                args,
            }
        }
        _ => Statement::Expr(random_expr(rng, 5)),
    }
}
