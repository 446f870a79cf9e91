use std::cmp::Ordering;

use super::float::dyadic_to_f64;
use super::{BigFloat, BigInt, Dyadic, NumError, PrecisionContext};

/// A real scalar: exact integer or rounded float.
///
/// Integer operands stay exact under `+ - *` and under `/` when the divisor
/// divides evenly; any other mix promotes to a float at the current context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Real {
    Int(BigInt),
    Float(BigFloat),
}

impl Real {
    pub fn int(v: i64) -> Real {
        Real::Int(BigInt::from_i64(v))
    }

    pub fn is_int(&self) -> bool {
        matches!(self, Real::Int(_))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Real::Int(i) => i.is_zero(),
            Real::Float(f) => f.is_zero(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Real::Int(i) => i.is_negative(),
            Real::Float(f) => f.is_negative(),
        }
    }

    pub fn to_dyadic(&self) -> Dyadic {
        match self {
            Real::Int(i) => Dyadic::from_int(i),
            Real::Float(f) => f.to_dyadic(),
        }
    }

    /// Float view of the value. Floats keep their own precision; integers are
    /// rounded at `ctx`.
    pub fn to_float(&self, ctx: &PrecisionContext) -> Result<BigFloat, NumError> {
        match self {
            Real::Int(i) => BigFloat::from_int(i, ctx),
            Real::Float(f) => Ok(f.clone()),
        }
    }

    /// Integers become floats at `ctx`; floats are left as they are.
    pub fn promote(&self, ctx: &PrecisionContext) -> Result<Real, NumError> {
        Ok(Real::Float(self.to_float(ctx)?))
    }

    /// Exact integer value when the number is integral.
    pub fn to_int(&self) -> Option<BigInt> {
        match self {
            Real::Int(i) => Some(i.clone()),
            Real::Float(f) => f.to_dyadic().to_int(),
        }
    }

    pub fn to_f64(&self) -> Result<f64, NumError> {
        dyadic_to_f64(&self.to_dyadic())
    }

    pub fn neg(&self) -> Real {
        match self {
            Real::Int(i) => Real::Int(i.neg()),
            Real::Float(f) => Real::Float(f.neg()),
        }
    }

    pub fn abs(&self) -> Real {
        match self {
            Real::Int(i) => Real::Int(i.abs()),
            Real::Float(f) => Real::Float(f.abs()),
        }
    }

    pub fn cmp_value(&self, other: &Real) -> Ordering {
        match (self, other) {
            (Real::Int(a), Real::Int(b)) => a.cmp(b),
            (Real::Float(a), Real::Float(b)) => a.cmp_value(b),
            _ => self.to_dyadic().cmp_value(&other.to_dyadic()),
        }
    }

    pub fn add(&self, other: &Real, ctx: &PrecisionContext) -> Result<Real, NumError> {
        match (self, other) {
            (Real::Int(a), Real::Int(b)) => Ok(Real::Int(a.add(b))),
            _ => Ok(Real::Float(self.to_float(ctx)?.add(&other.to_float(ctx)?, ctx)?)),
        }
    }

    pub fn sub(&self, other: &Real, ctx: &PrecisionContext) -> Result<Real, NumError> {
        self.add(&other.neg(), ctx)
    }

    pub fn mul(&self, other: &Real, ctx: &PrecisionContext) -> Result<Real, NumError> {
        match (self, other) {
            (Real::Int(a), Real::Int(b)) => Ok(Real::Int(a.mul(b))),
            _ => Ok(Real::Float(self.to_float(ctx)?.mul(&other.to_float(ctx)?, ctx)?)),
        }
    }

    pub fn div(&self, other: &Real, ctx: &PrecisionContext) -> Result<Real, NumError> {
        if other.is_zero() {
            return Err(NumError::DivisionByZero);
        }
        match (self, other) {
            (Real::Int(a), Real::Int(b)) => {
                let (q, r) = a.divrem(b)?;
                if r.is_zero() {
                    Ok(Real::Int(q))
                } else {
                    Ok(Real::Float(Dyadic::from_int(a).div_round(&Dyadic::from_int(b), ctx)?))
                }
            }
            _ => Ok(Real::Float(self.to_float(ctx)?.div(&other.to_float(ctx)?, ctx)?)),
        }
    }

    /// Rounds a float to `ctx`; integers are returned unchanged.
    pub fn round_to(&self, ctx: &PrecisionContext) -> Result<Real, NumError> {
        match self {
            Real::Int(_) => Ok(self.clone()),
            Real::Float(f) => Ok(Real::Float(f.round_to(ctx)?)),
        }
    }
}

impl From<BigInt> for Real {
    fn from(v: BigInt) -> Self {
        Real::Int(v)
    }
}

impl From<BigFloat> for Real {
    fn from(v: BigFloat) -> Self {
        Real::Float(v)
    }
}

/// Exactly accumulated `Σ aᵢ·bᵢ`, rounded once at `ctx`. Stays an integer
/// when every operand is one.
pub fn dot_exact(pairs: &[(&Real, &Real)], ctx: &PrecisionContext) -> Result<Real, NumError> {
    if pairs.iter().all(|(a, b)| a.is_int() && b.is_int()) {
        let mut acc = BigInt::zero();
        for (a, b) in pairs {
            if let (Real::Int(a), Real::Int(b)) = (a, b) {
                acc = acc.add(&a.mul(b));
            }
        }
        return Ok(Real::Int(acc));
    }
    let mut acc = Dyadic::zero();
    for (a, b) in pairs {
        acc = acc.add(&a.to_dyadic().mul(&b.to_dyadic()));
    }
    Ok(Real::Float(acc.round(ctx)?))
}

/// Exact sum rounded once; integer when every term is an integer.
pub fn sum_exact(terms: &[Real], ctx: &PrecisionContext) -> Result<Real, NumError> {
    if terms.iter().all(Real::is_int) {
        let mut acc = BigInt::zero();
        for t in terms {
            if let Real::Int(i) = t {
                acc = acc.add(i);
            }
        }
        return Ok(Real::Int(acc));
    }
    let mut acc = Dyadic::zero();
    for t in terms {
        acc = acc.add(&t.to_dyadic());
    }
    Ok(Real::Float(acc.round(ctx)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bignum::format::format_real;

    #[test]
    fn integer_division_promotes_only_when_inexact() {
        let c = PrecisionContext::default();
        let q = Real::int(16).div(&Real::int(4), &c).unwrap();
        assert_eq!(q, Real::int(4));
        let h = Real::int(7).div(&Real::int(2), &c).unwrap();
        assert!(matches!(h, Real::Float(_)));
        assert_eq!(format_real(&h, 8), "3.5");
        assert_eq!(Real::int(12).mul(&Real::int(1), &c).unwrap(), Real::int(12));
        assert_eq!(Real::int(1).div(&Real::int(0), &c), Err(NumError::DivisionByZero));
    }

    #[test]
    fn mixed_operands_promote() {
        let c = PrecisionContext::default();
        let half = Real::int(1).div(&Real::int(2), &c).unwrap();
        let s = Real::int(1).add(&half, &c).unwrap();
        assert!(matches!(s, Real::Float(_)));
        assert_eq!(format_real(&s, 8), "1.5");
    }

    #[test]
    fn exact_dot_is_rounded_once() {
        let c = PrecisionContext::for_bits(32);
        let big = Real::Float(BigFloat::from_i64(1 << 40, &c));
        let one = Real::int(1);
        let neg_big = big.neg();
        // Sequential rounding at 32 bits would lose the 1 entirely.
        let r = dot_exact(&[(&big, &one), (&one, &one), (&neg_big, &one)], &c).unwrap();
        assert_eq!(r.to_f64().unwrap(), 1.0);
    }
}
