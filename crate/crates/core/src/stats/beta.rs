//! Regularized incomplete beta function for half-integer parameters.
//!
//! Parameters are passed doubled (`a2 = 2a`) so that every quantity the
//! evaluation needs is exact or a rational multiple of π.

use crate::bignum::{pi_bbp, BigFloat, NumError, PrecisionContext};

const MAX_TERMS: u64 = 1_000_000;

fn powi(x: &BigFloat, mut e: u64, w: &PrecisionContext) -> Result<BigFloat, NumError> {
    let mut acc = BigFloat::from_i64(1, w);
    let mut base = x.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&base, w)?;
        }
        e >>= 1;
        if e > 0 {
            base = base.mul(&base, w)?;
        }
    }
    Ok(acc)
}

/// `x^(a2/2)`.
fn pow_half(x: &BigFloat, a2: u64, w: &PrecisionContext) -> Result<BigFloat, NumError> {
    let whole = powi(x, a2 / 2, w)?;
    if a2 % 2 == 1 {
        whole.mul(&x.sqrt(w)?, w)
    } else {
        Ok(whole)
    }
}

/// Complete beta function `B(a2/2, b2/2)` for positive half-integers.
///
/// Starts from `B(½,½) = π`, `B(1,½) = B(½,1) = 2` or `B(1,1) = 1` and climbs
/// with `B(a+1,b) = B(a,b)·a/(a+b)` and `B(a,b+1) = B(a,b)·b/(a+b)`.
pub fn beta_half(a2: u64, b2: u64, ctx: &PrecisionContext) -> Result<BigFloat, NumError> {
    if a2 == 0 || b2 == 0 {
        return Err(NumError::Domain {
            func: "beta".into(),
            value: format!("({}/2, {}/2)", a2, b2),
        });
    }
    let w = ctx.guarded(2);
    let mut x2 = 2 - a2 % 2;
    let mut y2 = 2 - b2 % 2;
    let mut acc = match (x2, y2) {
        (1, 1) => pi_bbp(&w)?,
        (2, 2) => BigFloat::from_i64(1, &w),
        _ => BigFloat::from_i64(2, &w),
    };
    while x2 < a2 {
        acc = acc.mul(&BigFloat::from_fraction(x2 as i64, (x2 + y2) as i64, &w)?, &w)?;
        x2 += 2;
    }
    while y2 < b2 {
        acc = acc.mul(&BigFloat::from_fraction(y2 as i64, (x2 + y2) as i64, &w)?, &w)?;
        y2 += 2;
    }
    acc.round_to(ctx)
}

/// `I_x(a2/2, b2/2)` for `0 ≤ x ≤ 1`, by the Lentz-evaluated continued
/// fraction on whichever side of the symmetry point converges quickly.
pub fn regularized_beta(x: &BigFloat, a2: u64, b2: u64, ctx: &PrecisionContext) -> Result<BigFloat, NumError> {
    let w = ctx.guarded(2);
    let one = BigFloat::from_i64(1, &w);
    if x.is_negative() || x.cmp_value(&one).is_gt() {
        return Err(NumError::Domain {
            func: "incomplete beta".into(),
            value: crate::bignum::format_float(x, 20),
        });
    }
    if x.is_zero() {
        return Ok(BigFloat::zero(ctx));
    }
    if x.cmp_value(&one).is_eq() {
        return Ok(BigFloat::from_i64(1, ctx));
    }
    let x = x.round_to(&w)?;
    let lhs = x.mul(&BigFloat::from_i64((a2 + b2 + 4) as i64, &w), &w)?;
    if lhs.cmp_value(&BigFloat::from_i64((a2 + 2) as i64, &w)).is_gt() {
        let y = one.sub(&x, &w)?;
        let r = beta_cf_term(&y, b2, a2, &w)?;
        return one.sub(&r, &w)?.round_to(ctx);
    }
    beta_cf_term(&x, a2, b2, &w)?.round_to(ctx)
}

fn beta_cf_term(x: &BigFloat, a2: u64, b2: u64, w: &PrecisionContext) -> Result<BigFloat, NumError> {
    let one = BigFloat::from_i64(1, w);
    let half = |v: i64| BigFloat::from_fraction(v, 2, w);
    let a = half(a2 as i64)?;
    let b = half(b2 as i64)?;
    let qab = a.add(&b, w)?;
    let qap = a.add(&one, w)?;
    let qam = a.sub(&one, w)?;
    let tiny = one.mul_pow2(-2 * w.bits() as i64)?;
    let guard = |v: BigFloat| if v.is_zero() { tiny.clone() } else { v };
    let tol = -(w.bits() as i64) + 4;

    let mut c = one.clone();
    let mut d = guard(one.sub(&qab.mul(x, w)?.div(&qap, w)?, w)?);
    d = one.div(&d, w)?;
    let mut h = d.clone();
    let mut converged = false;
    for m in 1..=MAX_TERMS {
        let mf = BigFloat::from_i64(m as i64, w);
        let m2 = BigFloat::from_i64(2 * m as i64, w);
        // Even step: m(b−m)x / ((a−1+2m)(a+2m)).
        let aa = mf
            .mul(&b.sub(&mf, w)?, w)?
            .mul(x, w)?
            .div(&qam.add(&m2, w)?.mul(&a.add(&m2, w)?, w)?, w)?;
        d = one.div(&guard(one.add(&aa.mul(&d, w)?, w)?), w)?;
        c = guard(one.add(&aa.div(&c, w)?, w)?);
        h = h.mul(&d, w)?.mul(&c, w)?;
        // Odd step: −(a+m)(a+b+m)x / ((a+2m)(a+1+2m)).
        let aa = a
            .add(&mf, w)?
            .mul(&qab.add(&mf, w)?, w)?
            .mul(x, w)?
            .div(&a.add(&m2, w)?.mul(&qap.add(&m2, w)?, w)?, w)?
            .neg();
        d = one.div(&guard(one.add(&aa.mul(&d, w)?, w)?), w)?;
        c = guard(one.add(&aa.div(&c, w)?, w)?);
        let del = d.mul(&c, w)?;
        h = h.mul(&del, w)?;
        if del.sub(&one, w)?.magnitude_exp().is_none_or(|e| e < tol) {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(NumError::Range("incomplete beta: continued fraction did not converge".into()));
    }
    let y = one.sub(x, w)?;
    let front = pow_half(x, a2, w)?
        .mul(&pow_half(&y, b2, w)?, w)?
        .div(&a.mul(&beta_half(a2, b2, w)?, w)?, w)?;
    front.mul(&h, w)
}
