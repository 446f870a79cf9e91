use std::fmt;

use super::beta::regularized_beta;
use super::descriptive::{exact_sum, stddev_at};
use super::mean;
use crate::bignum::{erfc, BigFloat, Dyadic, PrecisionContext, Real};
use crate::error::{Error, Result};
use crate::linalg::NumVector;

/// Significance level of the decision line.
pub const ALPHA: f64 = 0.05;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decision {
    Reject,
    FailToReject,
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decision::Reject => "reject H0",
            Decision::FailToReject => "fail to reject H0",
        })
    }
}

fn decide(p: &BigFloat, ctx: &PrecisionContext) -> Result<Decision> {
    let alpha = BigFloat::from_fraction(1, 20, ctx)?;
    Ok(if p.cmp_value(&alpha).is_lt() {
        Decision::Reject
    } else {
        Decision::FailToReject
    })
}

/// One-sample two-sided z-test with known σ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZTestResult {
    pub n: usize,
    pub mean: Real,
    pub mu0: Real,
    pub sigma: Real,
    pub z: BigFloat,
    pub p: BigFloat,
    pub decision: Decision,
}

/// `(Σx − n·μ₀)·√n / (n·d)` at precision `w`: the standardized distance of
/// the sample mean from `μ₀` when `d` is the spread.
fn standardize(v: &NumVector, mu0: &Real, d: &Dyadic, w: &PrecisionContext) -> Result<BigFloat> {
    let n = Dyadic::from_i64(v.len() as i64);
    let num = exact_sum(v).sub(&n.mul(&mu0.to_dyadic()));
    if num.is_zero() {
        return Ok(BigFloat::zero(w));
    }
    let ratio = num.div_round(&n.mul(d), w)?;
    let root_n = BigFloat::from_i64(v.len() as i64, w).sqrt(w)?;
    Ok(ratio.mul(&root_n, w)?)
}

pub fn ztest(v: &NumVector, mu0: &Real, sigma: &Real, ctx: &PrecisionContext) -> Result<ZTestResult> {
    if v.is_empty() {
        return Err(Error::Domain("ztest needs at least 1 value".into()));
    }
    if sigma.is_negative() || sigma.is_zero() {
        return Err(Error::Domain("ztest: sigma must be positive".into()));
    }
    let w = ctx.guarded(2);
    let z = standardize(v, mu0, &sigma.to_dyadic(), &w)?;
    let scaled = z.abs().div(&BigFloat::from_i64(2, &w).sqrt(&w)?, &w)?;
    let p = erfc(&scaled, ctx)?;
    Ok(ZTestResult {
        n: v.len(),
        mean: mean(v, ctx)?,
        mu0: mu0.clone(),
        sigma: sigma.clone(),
        z: z.round_to(ctx)?,
        decision: decide(&p, ctx)?,
        p,
    })
}

/// One-sample two-sided Student t-test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TTestResult {
    pub n: usize,
    pub mean: Real,
    pub mu0: Real,
    pub stddev: BigFloat,
    pub df: u64,
    pub t: BigFloat,
    pub p: BigFloat,
    pub decision: Decision,
}

/// `t = (x̄ − μ₀)/(s/√n)` with `n − 1` degrees of freedom; the two-sided
/// p-value is `I_{df/(df+t²)}(df/2, 1/2)`.
pub fn ttest(v: &NumVector, mu0: &Real, ctx: &PrecisionContext) -> Result<TTestResult> {
    if v.len() < 2 {
        return Err(Error::Domain(format!("ttest needs at least 2 values, got {}", v.len())));
    }
    let w = ctx.guarded(2);
    let s = stddev_at(v, &w)?;
    let df = (v.len() - 1) as u64;
    let (t, p) = if s.is_zero() {
        let n = Dyadic::from_i64(v.len() as i64);
        if exact_sum(v).sub(&n.mul(&mu0.to_dyadic())).is_zero() {
            (BigFloat::zero(&w), BigFloat::from_i64(1, ctx))
        } else {
            return Err(Error::Domain(
                "ttest: sample has zero spread and a mean different from mu0".into(),
            ));
        }
    } else {
        let t = standardize(v, mu0, &s.to_dyadic(), &w)?;
        let dfw = BigFloat::from_i64(df as i64, &w);
        let x = dfw.div(&dfw.add(&t.mul(&t, &w)?, &w)?, &w)?;
        (t, regularized_beta(&x, df, 1, ctx)?)
    };
    Ok(TTestResult {
        n: v.len(),
        mean: mean(v, ctx)?,
        mu0: mu0.clone(),
        stddev: s.round_to(ctx)?,
        df,
        t: t.round_to(ctx)?,
        decision: decide(&p, ctx)?,
        p,
    })
}
