//! Complementary error function.
//!
//! `|x| <= 3` uses the all-positive series
//! `erf x = 2/√π · e^{-x²} · Σ 2ⁿ x^{2n+1} / (1·3·…·(2n+1))`
//! with enough guard bits to absorb the cancellation in `1 - erf x`.
//! Larger arguments use the continued fraction
//! `erfc x = e^{-x²}/√π · 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + …))))`
//! evaluated with the modified Lentz method.

use super::elementary::exp;
use super::pi::pi_bbp;
use super::{BigFloat, NumError, PrecisionContext};

const SERIES_LIMIT: f64 = 3.0;
const MAX_CF_TERMS: u64 = 1_000_000;

pub fn erfc(x: &BigFloat, ctx: &PrecisionContext) -> Result<BigFloat, NumError> {
    if x.is_zero() {
        return Ok(BigFloat::from_i64(1, ctx));
    }
    if x.is_negative() {
        let w = ctx.guarded(1);
        let two = BigFloat::from_i64(2, &w);
        return two.sub(&erfc(&x.neg(), &w)?, &w)?.round_to(ctx);
    }
    let xf = x.to_f64().unwrap_or(f64::MAX);
    // e^{-x²} is below the smallest representable magnitude.
    if xf > 5.0e7 {
        return Ok(BigFloat::zero(ctx));
    }
    if xf <= SERIES_LIMIT {
        erfc_series(x, xf, ctx)
    } else {
        erfc_continued_fraction(x, ctx)
    }
}

fn erfc_series(x: &BigFloat, xf: f64, ctx: &PrecisionContext) -> Result<BigFloat, NumError> {
    let cancel_bits = (xf * xf * std::f64::consts::LOG2_E).ceil() as u64 + 4;
    let w = PrecisionContext::for_bits(ctx.bits() + 64 + cancel_bits);
    let x = x.round_to(&w)?;
    let x2 = x.mul(&x, &w)?;
    let two_x2 = x2.mul_pow2(1)?;
    let mut term = x.clone();
    let mut sum = x.clone();
    let mut n: i64 = 1;
    loop {
        term = term.mul(&two_x2, &w)?.div(&BigFloat::from_i64(2 * n + 1, &w), &w)?;
        let small = match (term.magnitude_exp(), sum.magnitude_exp()) {
            (Some(t), Some(s)) => t < s - w.bits() as i64 - 2,
            _ => true,
        };
        if small {
            break;
        }
        sum = sum.add(&term, &w)?;
        n += 1;
    }
    let sqrt_pi = pi_bbp(&w)?.sqrt(&w)?;
    let erf = exp(&x2.neg(), &w)?
        .mul(&sum, &w)?
        .mul_pow2(1)?
        .div(&sqrt_pi, &w)?;
    BigFloat::from_i64(1, &w).sub(&erf, &w)?.round_to(ctx)
}

fn erfc_continued_fraction(x: &BigFloat, ctx: &PrecisionContext) -> Result<BigFloat, NumError> {
    let w = ctx.guarded(2);
    let x = x.round_to(&w)?;
    let one = BigFloat::from_i64(1, &w);
    let tol = -(w.bits() as i64) + 2;
    let mut f = x.clone();
    let mut c = x.clone();
    let mut d = BigFloat::zero(&w);
    let mut converged = false;
    for j in 1..=MAX_CF_TERMS {
        let a = BigFloat::from_fraction(j as i64, 2, &w)?;
        d = one.div(&x.add(&a.mul(&d, &w)?, &w)?, &w)?;
        c = x.add(&a.div(&c, &w)?, &w)?;
        let delta = c.mul(&d, &w)?;
        f = f.mul(&delta, &w)?;
        let dev = delta.sub(&one, &w)?;
        if dev.magnitude_exp().is_none_or(|e| e < tol) {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(NumError::Range("erfc: continued fraction did not converge".into()));
    }
    let sqrt_pi = pi_bbp(&w)?.sqrt(&w)?;
    let x2 = x.mul(&x, &w)?;
    exp(&x2.neg(), &w)?
        .div(&sqrt_pi.mul(&f, &w)?, &w)?
        .round_to(ctx)
}
