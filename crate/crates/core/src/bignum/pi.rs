//! π from the Bailey–Borwein–Plouffe series
//! `π = Σ 16^-k (4/(8k+1) − 2/(8k+4) − 1/(8k+5) − 1/(8k+6))`.

use super::{BigFloat, BigInt, NumError, PrecisionContext};

/// `k`-th series term as an exact fraction `num / den` (without `16^-k`).
fn term_fraction(k: i64) -> (BigInt, BigInt) {
    let a = BigInt::from_i64(8 * k + 1);
    let b = BigInt::from_i64(8 * k + 4);
    let c = BigInt::from_i64(8 * k + 5);
    let d = BigInt::from_i64(8 * k + 6);
    let num = BigInt::from_i64(4)
        .mul(&b)
        .mul(&c)
        .mul(&d)
        .sub(&BigInt::from_i64(2).mul(&a).mul(&c).mul(&d))
        .sub(&a.mul(&b).mul(&d))
        .sub(&a.mul(&b).mul(&c));
    (num, a.mul(&b).mul(&c).mul(&d))
}

/// Partial sum of the first `terms` terms, rounded at `ctx`.
pub fn pi_partial(terms: u64, ctx: &PrecisionContext) -> Result<BigFloat, NumError> {
    let w = ctx.guarded(2);
    let mut sum = BigFloat::zero(&w);
    for k in 0..terms as i64 {
        let (num, den) = term_fraction(k);
        let t = BigFloat::from_ratio(
            num.is_negative(),
            num.magnitude(),
            den.magnitude(),
            -4 * k,
            &w,
        )?;
        sum = sum.add(&t, &w)?;
    }
    sum.round_to(ctx)
}

/// π correct to the precision of `ctx`.
pub fn pi_bbp(ctx: &PrecisionContext) -> Result<BigFloat, NumError> {
    // Each term contributes four bits; stop once 16^-k is below the guard
    // precision.
    let guarded_bits = ctx.guarded(2).bits();
    pi_partial(guarded_bits / 4 + 2, ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bignum::format::format_float;

    #[test]
    fn first_term_is_47_over_15() {
        let c = PrecisionContext::with_precision(2).unwrap();
        let t = pi_partial(1, &c).unwrap();
        assert_eq!(t, BigFloat::from_fraction(47, 15, &c).unwrap());
        assert_eq!(format_float(&t, 8), "3.1333333");
    }

    #[test]
    fn digits_at_two_and_six_words() {
        let c = PrecisionContext::with_precision(2).unwrap();
        assert_eq!(format_float(&pi_bbp(&c).unwrap(), 16), "3.141592653589793");
        let c = PrecisionContext::with_precision(6).unwrap();
        assert_eq!(
            format_float(&pi_bbp(&c).unwrap(), 48),
            "3.14159265358979323846264338327950288419716939938"
        );
    }

    #[test]
    fn downcast_matches_double_constant() {
        let c = PrecisionContext::with_precision(6).unwrap();
        assert_eq!(pi_bbp(&c).unwrap().to_f64().unwrap(), std::f64::consts::PI);
    }
}
