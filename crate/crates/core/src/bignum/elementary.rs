//! Elementary functions.
//!
//! Each kernel reduces its argument, sums a power series at a wider working
//! precision (at least two extra limbs) and rounds once into the caller's
//! context.

use std::cmp::Ordering;

use super::format::format_float;
use super::pi::pi_bbp;
use super::{BigFloat, BigInt, Nat, NumError, PrecisionContext, Real};

const GUARD_BITS: u64 = 64;

fn domain(func: &str, x: &BigFloat) -> NumError {
    NumError::Domain {
        func: func.to_string(),
        value: format_float(x, 8),
    }
}

fn one(w: &PrecisionContext) -> BigFloat {
    BigFloat::from_i64(1, w)
}

/// True when `term` is negligible next to `sum` at `bits` of precision.
fn negligible(term: &BigFloat, sum: &BigFloat, bits: u64) -> bool {
    match (term.magnitude_exp(), sum.magnitude_exp()) {
        (None, _) => true,
        (Some(t), Some(s)) => t < s - bits as i64 - 2,
        (Some(_), None) => false,
    }
}

/// `ln 2 = 2·atanh(1/3)`.
pub fn ln2(ctx: &PrecisionContext) -> Result<BigFloat, NumError> {
    let w = ctx.guarded(1);
    let nine = Nat::from_u64(9);
    let mut power = Nat::from_u64(3);
    let mut sum = BigFloat::zero(&w);
    let mut k: u64 = 0;
    loop {
        let den = power.mul(&Nat::from_u64(2 * k + 1));
        let term = BigFloat::from_ratio(false, &Nat::one(), &den, 1, &w)?;
        if negligible(&term, &sum, w.bits()) {
            break;
        }
        sum = sum.add(&term, &w)?;
        power = power.mul(&nine);
        k += 1;
    }
    sum.round_to(ctx)
}

pub fn exp(x: &BigFloat, ctx: &PrecisionContext) -> Result<BigFloat, NumError> {
    let Some(top) = x.magnitude_exp() else {
        return Ok(one(ctx));
    };
    if top > 53 {
        return Err(NumError::Range(format!(
            "exp: argument {} out of range",
            format_float(x, 8)
        )));
    }
    let halvings = ((ctx.bits() as f64).sqrt() as i64).max(4);
    let wp = ctx.bits() + GUARD_BITS + top.max(0) as u64 + halvings as u64;
    let w = PrecisionContext::for_bits(wp);
    let l2 = ln2(&w)?;
    let k = x.div(&l2, &w)?.round_to_int();
    let r = x.sub(&BigFloat::from_int(&k, &w)?.mul(&l2, &w)?, &w)?;
    let r = r.mul_pow2(-halvings)?;

    let mut sum = one(&w);
    let mut term = one(&w);
    let mut n = 1;
    loop {
        term = term.mul(&r, &w)?.div(&BigFloat::from_i64(n, &w), &w)?;
        if negligible(&term, &sum, w.bits()) {
            break;
        }
        sum = sum.add(&term, &w)?;
        n += 1;
    }
    for _ in 0..halvings {
        sum = sum.mul(&sum, &w)?;
    }
    let k = k
        .to_i64()
        .ok_or_else(|| NumError::Range("exp: result out of range".into()))?;
    sum.mul_pow2(k)?.round_to(ctx)
}

pub fn log(x: &BigFloat, ctx: &PrecisionContext) -> Result<BigFloat, NumError> {
    if x.is_zero() || x.is_negative() {
        return Err(domain("log", x));
    }
    let top = x.magnitude_exp().unwrap_or(0);
    let mut e2 = top - 1;
    let w = PrecisionContext::for_bits(ctx.bits() + GUARD_BITS + 64);
    let mut m = x.mul_pow2(-e2)?.round_to(&w)?;
    if m.to_f64()? > std::f64::consts::SQRT_2 {
        m = m.mul_pow2(-1)?;
        e2 += 1;
    }
    let one_w = one(&w);
    let t = m.sub(&one_w, &w)?.div(&m.add(&one_w, &w)?, &w)?;
    let t2 = t.mul(&t, &w)?;
    let mut sum = t.clone();
    let mut power = t;
    let mut n = 3;
    if !sum.is_zero() {
        loop {
            power = power.mul(&t2, &w)?;
            let term = power.div(&BigFloat::from_i64(n, &w), &w)?;
            if negligible(&term, &sum, w.bits()) {
                break;
            }
            sum = sum.add(&term, &w)?;
            n += 2;
        }
    }
    let mut result = sum.mul_pow2(1)?;
    if e2 != 0 {
        let l2 = ln2(&w)?;
        result = result.add(&BigFloat::from_i64(e2, &w).mul(&l2, &w)?, &w)?;
    }
    result.round_to(ctx)
}

fn sin_cos_reduced(r: &BigFloat, w: &PrecisionContext) -> Result<(BigFloat, BigFloat), NumError> {
    let r2 = r.mul(r, w)?;
    let mut sin = r.clone();
    let mut term = r.clone();
    let mut n: i64 = 1;
    if !r.is_zero() {
        loop {
            term = term
                .mul(&r2, w)?
                .div(&BigFloat::from_i64((2 * n) * (2 * n + 1), w), w)?
                .neg();
            if negligible(&term, &sin, w.bits()) {
                break;
            }
            sin = sin.add(&term, w)?;
            n += 1;
        }
    }
    let mut cos = one(w);
    let mut term = one(w);
    let mut n: i64 = 1;
    loop {
        term = term
            .mul(&r2, w)?
            .div(&BigFloat::from_i64((2 * n - 1) * (2 * n), w), w)?
            .neg();
        if negligible(&term, &cos, w.bits()) {
            break;
        }
        cos = cos.add(&term, w)?;
        n += 1;
    }
    Ok((sin, cos))
}

/// Returns `(sin x, cos x)` rounded at `ctx`.
pub fn sin_cos(x: &BigFloat, ctx: &PrecisionContext) -> Result<(BigFloat, BigFloat), NumError> {
    let Some(top) = x.magnitude_exp() else {
        return Ok((BigFloat::zero(ctx), one(ctx)));
    };
    if top > 1 << 20 {
        return Err(NumError::Range(format!(
            "trigonometric argument {} too large",
            format_float(x, 8)
        )));
    }
    let wp = ctx.bits() + GUARD_BITS + top.max(0) as u64;
    let w = PrecisionContext::for_bits(wp);
    let half_pi = pi_bbp(&w)?.mul_pow2(-1)?;
    let k = x.div(&half_pi, &w)?.round_to_int();
    let r = x.sub(&BigFloat::from_int(&k, &w)?.mul(&half_pi, &w)?, &w)?;
    let (s, c) = sin_cos_reduced(&r, &w)?;
    let quadrant = k.divrem(&BigInt::from_i64(4))?.1.to_i64().unwrap_or(0).rem_euclid(4);
    let (s, c) = match quadrant {
        0 => (s, c),
        1 => (c, s.neg()),
        2 => (s.neg(), c.neg()),
        _ => (c.neg(), s),
    };
    Ok((s.round_to(ctx)?, c.round_to(ctx)?))
}

pub fn sin(x: &BigFloat, ctx: &PrecisionContext) -> Result<BigFloat, NumError> {
    Ok(sin_cos(x, ctx)?.0)
}

pub fn cos(x: &BigFloat, ctx: &PrecisionContext) -> Result<BigFloat, NumError> {
    Ok(sin_cos(x, ctx)?.1)
}

pub fn sqrt(x: &BigFloat, ctx: &PrecisionContext) -> Result<BigFloat, NumError> {
    x.sqrt(ctx)
}

/// Caps exact integer powers so a typo cannot exhaust memory.
const MAX_INT_POW_BITS: u64 = 1 << 24;

fn float_powi(base: &BigFloat, e: &BigInt, ctx: &PrecisionContext) -> Result<BigFloat, NumError> {
    let n = e.magnitude().clone();
    let wp = ctx.bits() + GUARD_BITS + n.bit_len();
    let w = PrecisionContext::for_bits(wp);
    let mut acc = one(&w);
    let mut b = base.round_to(&w)?;
    for i in 0..n.bit_len() {
        if n.bit(i) {
            acc = acc.mul(&b, &w)?;
        }
        if i + 1 < n.bit_len() {
            b = b.mul(&b, &w)?;
        }
    }
    if e.is_negative() {
        acc = one(&w).div(&acc, &w)?;
    }
    acc.round_to(ctx)
}

/// `base ^ exponent` with exact integer results when both are integers and
/// the exponent is non-negative.
pub fn pow(base: &Real, exponent: &Real, ctx: &PrecisionContext) -> Result<Real, NumError> {
    if let Some(e) = exponent.to_int() {
        if let Real::Int(b) = base {
            if !e.is_negative() {
                let e64 = e.to_i64().filter(|&v| {
                    (v as u64).saturating_mul(b.magnitude().bit_len()) <= MAX_INT_POW_BITS
                });
                return match e64 {
                    Some(v) => Ok(Real::Int(b.pow(v as u64))),
                    None if b.magnitude().bit_len() <= 1 => {
                        // 0, 1 and -1 stay small for any exponent.
                        let odd = e.magnitude().is_odd();
                        Ok(Real::Int(if b.is_negative() && odd {
                            b.clone()
                        } else {
                            b.abs()
                        }))
                    }
                    None => Err(NumError::Range("integer power too large".into())),
                };
            }
        }
        if base.is_zero() {
            return if e.is_negative() {
                Err(NumError::DivisionByZero)
            } else if e.is_zero() {
                Ok(Real::int(1))
            } else {
                Ok(base.clone())
            };
        }
        if e.magnitude().bit_len() <= 62 {
            return Ok(Real::Float(float_powi(&base.to_float(ctx)?, &e, ctx)?));
        }
    }
    let b = base.to_float(ctx)?;
    let y = exponent.to_float(ctx)?;
    if b.is_zero() {
        return match y.cmp_value(&BigFloat::zero(ctx)) {
            Ordering::Greater => Ok(Real::Float(BigFloat::zero(ctx))),
            _ => Err(NumError::DivisionByZero),
        };
    }
    if b.is_negative() {
        return Err(NumError::Domain {
            func: "^".into(),
            value: format_float(&b, 8),
        });
    }
    let w = ctx.guarded(2);
    let l = log(&b, &w)?;
    Ok(Real::Float(exp(&y.mul(&l, &w)?, &w)?.round_to(ctx)?))
}
