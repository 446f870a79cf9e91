//! Multiple-precision binary floating point.
//!
//! A non-zero [`BigFloat`] is `±m · 2^exp` where `m` occupies exactly
//! `32 · words` bits with its top bit set. There are no infinities or NaNs:
//! operations that would produce them return a [`NumError`] instead.

use std::cmp::Ordering;

use super::{BigInt, Nat, NumError, PrecisionContext};

/// Largest magnitude of a binary exponent before a result is reported as an
/// overflow or underflow.
pub const EXP_LIMIT: i64 = 1 << 52;

/// Exact binary rational `±mag · 2^exp`. Used for intermediate results that
/// must be rounded exactly once.
#[derive(Clone, Debug)]
pub struct Dyadic {
    pub neg: bool,
    pub mag: Nat,
    pub exp: i64,
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic {
            neg: false,
            mag: Nat::zero(),
            exp: 0,
        }
    }

    pub fn from_int(v: &BigInt) -> Self {
        Dyadic {
            neg: v.is_negative(),
            mag: v.magnitude().clone(),
            exp: 0,
        }
    }

    pub fn from_i64(v: i64) -> Self {
        Dyadic::from_int(&BigInt::from_i64(v))
    }

    pub fn is_zero(&self) -> bool {
        self.mag.is_zero()
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic {
            neg: !self.neg && !self.mag.is_zero(),
            ..self.clone()
        }
    }

    pub fn mul_pow2(&self, k: i64) -> Dyadic {
        Dyadic {
            exp: self.exp + k,
            ..self.clone()
        }
    }

    pub fn add(&self, other: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let exp = self.exp.min(other.exp);
        let a = self.mag.shl((self.exp - exp) as u64);
        let b = other.mag.shl((other.exp - exp) as u64);
        let (neg, mag) = if self.neg == other.neg {
            (self.neg, a.add(&b))
        } else {
            match a.cmp(&b) {
                Ordering::Equal => return Dyadic::zero(),
                Ordering::Greater => (self.neg, a.sub(&b)),
                Ordering::Less => (other.neg, b.sub(&a)),
            }
        };
        Dyadic { neg, mag, exp }
    }

    pub fn sub(&self, other: &Dyadic) -> Dyadic {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Dyadic) -> Dyadic {
        let mag = self.mag.mul(&other.mag);
        Dyadic {
            neg: (self.neg != other.neg) && !mag.is_zero(),
            mag,
            exp: self.exp + other.exp,
        }
    }

    pub fn cmp_value(&self, other: &Dyadic) -> Ordering {
        let d = self.sub(other);
        if d.is_zero() {
            Ordering::Equal
        } else if d.neg {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    pub fn round(&self, ctx: &PrecisionContext) -> Result<BigFloat, NumError> {
        BigFloat::from_rounded(self.neg, self.mag.clone(), self.exp, false, ctx)
    }

    /// Correctly rounded quotient `self / other`.
    pub fn div_round(&self, other: &Dyadic, ctx: &PrecisionContext) -> Result<BigFloat, NumError> {
        if other.is_zero() {
            return Err(NumError::DivisionByZero);
        }
        BigFloat::from_ratio(
            self.neg != other.neg,
            &self.mag,
            &other.mag,
            self.exp - other.exp,
            ctx,
        )
    }

    /// Exact value as an integer, when it is one.
    pub fn to_int(&self) -> Option<BigInt> {
        if self.exp >= 0 {
            Some(BigInt::from_parts(self.neg, self.mag.shl(self.exp as u64)))
        } else if self.mag.is_zero() || self.mag.trailing_zeros() >= self.exp.unsigned_abs() {
            Some(BigInt::from_parts(self.neg, self.mag.shr(self.exp.unsigned_abs())))
        } else {
            None
        }
    }
}

/// Rounds `mag · 2^exp` (plus a strictly positive fraction below the last bit
/// of `mag` when `sticky` is set) to `bits` significant bits, ties to even.
/// Returns a mantissa of exactly `bits` bits and its exponent.
pub(crate) fn round_mag(mag: Nat, exp: i64, sticky: bool, bits: u64) -> (Nat, i64) {
    let n = mag.bit_len();
    if n <= bits {
        debug_assert!(!sticky, "sticky rounding needs guard bits");
        let up = bits - n;
        return (mag.shl(up), exp - up as i64);
    }
    let shift = n - bits;
    let kept = mag.shr(shift);
    let half = mag.bit(shift - 1);
    let below = sticky || mag.low_bits_nonzero(shift - 1);
    let exp = exp + shift as i64;
    if half && (below || kept.is_odd()) {
        let bumped = kept.add_small(1);
        if bumped.bit_len() > bits {
            (bumped.shr(1), exp + 1)
        } else {
            (bumped, exp)
        }
    } else {
        (kept, exp)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BigFloat {
    neg: bool,
    exp: i64,
    /// Little-endian significand limbs; all zero for the zero value.
    limbs: Vec<u32>,
}

impl BigFloat {
    pub fn zero(ctx: &PrecisionContext) -> Self {
        BigFloat {
            neg: false,
            exp: 0,
            limbs: vec![0; ctx.words() as usize],
        }
    }

    pub(crate) fn from_rounded(
        neg: bool,
        mag: Nat,
        exp: i64,
        sticky: bool,
        ctx: &PrecisionContext,
    ) -> Result<BigFloat, NumError> {
        if mag.is_zero() {
            return Ok(BigFloat::zero(ctx));
        }
        let bits = ctx.bits();
        let (m, e) = round_mag(mag, exp, sticky, bits);
        let top = e + bits as i64;
        if top > EXP_LIMIT {
            return Err(NumError::Range("floating point overflow".into()));
        }
        if top < -EXP_LIMIT {
            return Err(NumError::Range("floating point underflow".into()));
        }
        let mut limbs = m.into_limbs();
        limbs.resize(ctx.words() as usize, 0);
        Ok(BigFloat { neg, exp: e, limbs })
    }

    /// Correctly rounded `±(num / den) · 2^exp`.
    pub(crate) fn from_ratio(
        neg: bool,
        num: &Nat,
        den: &Nat,
        exp: i64,
        ctx: &PrecisionContext,
    ) -> Result<BigFloat, NumError> {
        if den.is_zero() {
            return Err(NumError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(BigFloat::zero(ctx));
        }
        let target = ctx.bits() as i64 + 2;
        let shift = target - (num.bit_len() as i64 - den.bit_len() as i64);
        let (q, r) = if shift >= 0 {
            num.shl(shift as u64).divrem(den)
        } else {
            num.divrem(&den.shl(shift.unsigned_abs()))
        };
        BigFloat::from_rounded(neg, q, exp - shift, !r.is_zero(), ctx)
    }

    pub fn from_int(v: &BigInt, ctx: &PrecisionContext) -> Result<BigFloat, NumError> {
        BigFloat::from_rounded(v.is_negative(), v.magnitude().clone(), 0, false, ctx)
    }

    pub fn from_i64(v: i64, ctx: &PrecisionContext) -> BigFloat {
        // 64-bit integers never overflow the exponent range.
        BigFloat::from_int(&BigInt::from_i64(v), ctx).expect("i64 fits the exponent range")
    }

    /// Correctly rounded `num / den` for small integers.
    pub fn from_fraction(num: i64, den: i64, ctx: &PrecisionContext) -> Result<BigFloat, NumError> {
        BigFloat::from_ratio(
            (num < 0) != (den < 0),
            &Nat::from_u64(num.unsigned_abs()),
            &Nat::from_u64(den.unsigned_abs()),
            0,
            ctx,
        )
    }

    pub fn from_f64(v: f64, ctx: &PrecisionContext) -> Result<BigFloat, NumError> {
        if !v.is_finite() {
            return Err(NumError::Range(format!("{v} is not a finite number")));
        }
        if v == 0.0 {
            return Ok(BigFloat::zero(ctx));
        }
        let bits = v.to_bits();
        let biased = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, exp) = if biased == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), biased - 1075)
        };
        BigFloat::from_rounded(v < 0.0, Nat::from_u64(mant), exp, false, ctx)
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.iter().all(|&l| l == 0)
    }

    pub fn is_negative(&self) -> bool {
        self.neg
    }

    /// Number of significand limbs this value was produced with.
    pub fn words(&self) -> u32 {
        self.limbs.len() as u32
    }

    /// Exponent of the least significant significand bit.
    pub fn exponent(&self) -> i64 {
        self.exp
    }

    /// `e` such that `2^(e-1) <= |x| < 2^e`; `None` for zero.
    pub fn magnitude_exp(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.exp + 32 * self.limbs.len() as i64)
        }
    }

    pub fn limbs(&self) -> &[u32] {
        &self.limbs
    }

    pub fn mantissa(&self) -> Nat {
        Nat::from_limbs(self.limbs.clone())
    }

    pub fn to_dyadic(&self) -> Dyadic {
        Dyadic {
            neg: self.neg,
            mag: self.mantissa(),
            exp: self.exp,
        }
    }

    pub fn neg(&self) -> BigFloat {
        BigFloat {
            neg: !self.neg && !self.is_zero(),
            ..self.clone()
        }
    }

    pub fn abs(&self) -> BigFloat {
        BigFloat {
            neg: false,
            ..self.clone()
        }
    }

    /// Exact scaling by a power of two.
    pub fn mul_pow2(&self, k: i64) -> Result<BigFloat, NumError> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let exp = self.exp + k;
        let top = exp + 32 * self.limbs.len() as i64;
        if top.abs() > EXP_LIMIT {
            return Err(NumError::Range("floating point exponent out of range".into()));
        }
        Ok(BigFloat { exp, ..self.clone() })
    }

    /// Re-rounds to another precision.
    pub fn round_to(&self, ctx: &PrecisionContext) -> Result<BigFloat, NumError> {
        if self.words() == ctx.words() {
            return Ok(self.clone());
        }
        self.to_dyadic().round(ctx)
    }

    pub fn cmp_abs(&self, other: &BigFloat) -> Ordering {
        match (self.magnitude_exp(), other.magnitude_exp()) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some(a), Some(b)) if a != b => a.cmp(&b),
            _ => self.abs().to_dyadic().cmp_value(&other.abs().to_dyadic()),
        }
    }

    pub fn cmp_value(&self, other: &BigFloat) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Ordering::Equal,
            (true, false) => {
                return if other.neg { Ordering::Greater } else { Ordering::Less };
            }
            (false, true) => {
                return if self.neg { Ordering::Less } else { Ordering::Greater };
            }
            _ => {}
        }
        match (self.neg, other.neg) {
            (false, true) => Ordering::Greater,
            (true, false) => Ordering::Less,
            (false, false) => self.cmp_abs(other),
            (true, true) => other.cmp_abs(self),
        }
    }

    pub fn add(&self, other: &BigFloat, ctx: &PrecisionContext) -> Result<BigFloat, NumError> {
        if self.is_zero() {
            return other.round_to(ctx);
        }
        if other.is_zero() {
            return self.round_to(ctx);
        }
        let (big, small) = if self.cmp_abs(other) == Ordering::Less {
            (other, self)
        } else {
            (self, other)
        };
        let top = big.magnitude_exp().unwrap_or(0);
        // Every rounding boundary near `big`, and `big` itself, is a multiple
        // of 2^grid. An addend below 2^(grid-1) only decides which side of
        // `big` the sum falls on, so it can be replaced by 2^(grid-1).
        let grid = big.exp.min(top - ctx.bits() as i64 - 2);
        let small_top = small.magnitude_exp().unwrap_or(0);
        let small = if small_top < grid {
            Dyadic {
                neg: small.neg,
                mag: Nat::one(),
                exp: grid - 1,
            }
        } else {
            small.to_dyadic()
        };
        big.to_dyadic().add(&small).round(ctx)
    }

    pub fn sub(&self, other: &BigFloat, ctx: &PrecisionContext) -> Result<BigFloat, NumError> {
        self.add(&other.neg(), ctx)
    }

    pub fn mul(&self, other: &BigFloat, ctx: &PrecisionContext) -> Result<BigFloat, NumError> {
        self.to_dyadic().mul(&other.to_dyadic()).round(ctx)
    }

    pub fn div(&self, other: &BigFloat, ctx: &PrecisionContext) -> Result<BigFloat, NumError> {
        if other.is_zero() {
            return Err(NumError::DivisionByZero);
        }
        BigFloat::from_ratio(
            self.neg != other.neg,
            &self.mantissa(),
            &other.mantissa(),
            self.exp - other.exp,
            ctx,
        )
    }

    /// Correctly rounded square root.
    pub fn sqrt(&self, ctx: &PrecisionContext) -> Result<BigFloat, NumError> {
        if self.is_zero() {
            return Ok(BigFloat::zero(ctx));
        }
        if self.neg {
            return Err(NumError::Domain {
                func: "sqrt".into(),
                value: super::format::format_float(self, 8),
            });
        }
        let m = self.mantissa();
        // Scale so the integer root carries at least bits + 2 bits and the
        // remaining exponent is even.
        let want = 2 * (ctx.bits() + 2);
        let mut shift = want.saturating_sub(m.bit_len()) as i64 + 2;
        if (self.exp - shift).rem_euclid(2) != 0 {
            shift += 1;
        }
        let scaled = m.shl(shift as u64);
        let root = scaled.isqrt();
        let exact = root.mul(&root) == scaled;
        BigFloat::from_rounded(false, root, (self.exp - shift) / 2, !exact, ctx)
    }

    pub fn is_integer(&self) -> bool {
        self.is_zero() || self.exp >= 0 || self.mantissa().trailing_zeros() >= self.exp.unsigned_abs()
    }

    /// Nearest integer, ties to even.
    pub fn round_to_int(&self) -> BigInt {
        if self.exp >= 0 {
            return BigInt::from_parts(self.neg, self.mantissa().shl(self.exp as u64));
        }
        let m = self.mantissa();
        let shift = self.exp.unsigned_abs();
        let kept = m.shr(shift);
        let half = m.bit(shift - 1);
        let below = m.low_bits_nonzero(shift - 1);
        let kept = if half && (below || kept.is_odd()) {
            kept.add_small(1)
        } else {
            kept
        };
        BigInt::from_parts(self.neg, kept)
    }

    /// Largest integer not above the value.
    pub fn floor_to_int(&self) -> BigInt {
        if self.exp >= 0 {
            return BigInt::from_parts(self.neg, self.mantissa().shl(self.exp as u64));
        }
        let m = self.mantissa();
        let shift = self.exp.unsigned_abs();
        let kept = m.shr(shift);
        if self.neg && m.low_bits_nonzero(shift) {
            BigInt::from_parts(true, kept.add_small(1))
        } else {
            BigInt::from_parts(self.neg, kept)
        }
    }

    /// Round-to-nearest conversion to a 64-bit binary float.
    pub fn to_f64(&self) -> Result<f64, NumError> {
        dyadic_to_f64(&self.to_dyadic())
    }
}

/// Round-to-nearest conversion of an exact value to `f64`, including the
/// subnormal range. Values beyond the largest finite double are an error.
pub(crate) fn dyadic_to_f64(x: &Dyadic) -> Result<f64, NumError> {
    if x.mag.is_zero() {
        return Ok(0.0);
    }
    let top = x.exp + x.mag.bit_len() as i64;
    let bits = if top - 1 >= -1022 {
        53
    } else {
        let avail = top + 1074;
        if avail <= 0 {
            // Below half the smallest subnormal unless exactly representable
            // as the first rounding step; flush to signed zero.
            let half_min = avail == 0 && {
                let above_half = x.mag.low_bits_nonzero(x.mag.bit_len() - 1);
                above_half
            };
            let v = if half_min { f64::from_bits(1) } else { 0.0 };
            return Ok(if x.neg { -v } else { v });
        }
        avail as u64
    };
    let (m, e) = round_mag(x.mag.clone(), x.exp, false, bits);
    let top = e + m.bit_len() as i64;
    if top > 1024 {
        return Err(NumError::Range("value exceeds the double range".into()));
    }
    let m = m.to_u64().expect("at most 53 bits") as f64;
    let v = m * pow2(e);
    Ok(if x.neg { -v } else { v })
}

fn pow2(e: i64) -> f64 {
    if e >= -1022 {
        f64::from_bits(((e + 1023) as u64) << 52)
    } else {
        f64::from_bits(1u64 << (e + 1074))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(words: u32) -> PrecisionContext {
        PrecisionContext::with_precision(words).unwrap()
    }

    fn f(v: f64, c: &PrecisionContext) -> BigFloat {
        BigFloat::from_f64(v, c).unwrap()
    }

    #[test]
    fn small_integer_sum_is_exact() {
        let c = ctx(2);
        let s = f(2.0, &c).add(&f(2.0, &c), &c).unwrap();
        assert_eq!(s.to_f64().unwrap(), 4.0);
    }

    #[test]
    fn normalized_leading_bit() {
        let c = ctx(3);
        let x = BigFloat::from_fraction(1, 3, &c).unwrap();
        assert_eq!(x.limbs().len(), 3);
        assert!(x.limbs()[2] & 0x8000_0000 != 0);
        assert_eq!(BigFloat::zero(&c).limbs(), &[0, 0, 0]);
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let c = ctx(2);
        assert_eq!(
            f(1.0, &c).div(&BigFloat::zero(&c), &c),
            Err(NumError::DivisionByZero)
        );
    }

    #[test]
    fn ties_round_to_even() {
        let c = PrecisionContext::for_bits(32);
        // 2^32 + 1 is a tie between 2^32 and 2^32 + 2 at 32 bits.
        let x = BigFloat::from_int(&BigInt::from_i64((1 << 32) + 1), &c).unwrap();
        assert_eq!(x.to_f64().unwrap(), 4294967296.0);
        let y = BigFloat::from_int(&BigInt::from_i64((1 << 32) + 3), &c).unwrap();
        assert_eq!(y.to_f64().unwrap(), 4294967300.0);
    }

    #[test]
    fn tiny_addend_respects_direction() {
        let c = ctx(2);
        let one = f(1.0, &c);
        let tiny = f(1e-200, &c);
        assert_eq!(one.add(&tiny, &c).unwrap(), one);
        let below = one.sub(&tiny, &c).unwrap();
        assert_eq!(below, one);
        // Ties at the midpoint are broken by the tiny addend.
        let mid = one.to_dyadic().add(&Dyadic {
            neg: false,
            mag: Nat::one(),
            exp: -64,
        });
        let wide = mid.round(&ctx(4)).unwrap();
        let up = wide.add(&tiny, &c).unwrap();
        assert_eq!(up.mantissa(), Nat::from_u64((1u64 << 63) + 1));
        let down = wide.sub(&tiny, &c).unwrap();
        assert_eq!(down, one);
    }

    #[test]
    fn sqrt_exact_and_inexact() {
        let c = ctx(2);
        assert_eq!(f(16.0, &c).sqrt(&c).unwrap().to_f64().unwrap(), 4.0);
        assert_eq!(f(2.0, &c).sqrt(&c).unwrap().to_f64().unwrap(), 2f64.sqrt());
        assert!(matches!(f(-1.0, &c).sqrt(&c), Err(NumError::Domain { .. })));
    }

    #[test]
    fn integer_rounding() {
        let c = ctx(2);
        assert_eq!(f(2.5, &c).round_to_int(), BigInt::from_i64(2));
        assert_eq!(f(3.5, &c).round_to_int(), BigInt::from_i64(4));
        assert_eq!(f(-2.5, &c).floor_to_int(), BigInt::from_i64(-3));
        assert_eq!(f(-2.0, &c).floor_to_int(), BigInt::from_i64(-2));
        assert!(f(12.0, &c).is_integer());
        assert!(!f(12.5, &c).is_integer());
    }

    #[test]
    fn downcast_edges() {
        let c = ctx(2);
        let two64 = BigFloat::from_int(&BigInt::from_i64(2).pow(64), &c).unwrap();
        assert_eq!(two64.to_f64().unwrap(), 1.8446744073709552e19);
        assert_eq!(f(5e-324, &c).to_f64().unwrap(), 5e-324);
        assert_eq!(f(2.2250738585072014e-308, &c).to_f64().unwrap(), 2.2250738585072014e-308);
        let huge = BigFloat::from_int(&BigInt::from_i64(2).pow(1100), &c).unwrap();
        assert!(matches!(huge.to_f64(), Err(NumError::Range(_))));
    }

    #[test]
    fn exponent_overflow_is_an_error() {
        let c = ctx(1);
        let x = f(1.0, &c).mul_pow2(EXP_LIMIT - 40).unwrap();
        assert!(matches!(x.mul(&x, &c), Err(NumError::Range(_))));
    }
}
