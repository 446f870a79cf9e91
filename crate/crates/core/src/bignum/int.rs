use std::cmp::Ordering;
use std::fmt;

use super::{Nat, NumError};

/// Signed arbitrary-size integer. Zero is never negative.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BigInt {
    neg: bool,
    mag: Nat,
}

impl BigInt {
    pub fn zero() -> Self {
        BigInt::default()
    }

    pub fn from_parts(neg: bool, mag: Nat) -> Self {
        let neg = neg && !mag.is_zero();
        BigInt { neg, mag }
    }

    pub fn from_i64(v: i64) -> Self {
        BigInt::from_parts(v < 0, Nat::from_u64(v.unsigned_abs()))
    }

    pub fn magnitude(&self) -> &Nat {
        &self.mag
    }

    pub fn is_negative(&self) -> bool {
        self.neg
    }

    pub fn is_zero(&self) -> bool {
        self.mag.is_zero()
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        if self.is_zero() {
            0
        } else if self.neg {
            -1
        } else {
            1
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        let m = self.mag.to_u64()?;
        if self.neg {
            if m <= i64::MAX as u64 + 1 {
                Some((m as i64).wrapping_neg())
            } else {
                None
            }
        } else {
            i64::try_from(m).ok()
        }
    }

    pub fn neg(&self) -> BigInt {
        BigInt::from_parts(!self.neg, self.mag.clone())
    }

    pub fn abs(&self) -> BigInt {
        BigInt::from_parts(false, self.mag.clone())
    }

    pub fn add(&self, other: &BigInt) -> BigInt {
        if self.neg == other.neg {
            return BigInt::from_parts(self.neg, self.mag.add(&other.mag));
        }
        match self.mag.cmp(&other.mag) {
            Ordering::Equal => BigInt::zero(),
            Ordering::Greater => BigInt::from_parts(self.neg, self.mag.sub(&other.mag)),
            Ordering::Less => BigInt::from_parts(other.neg, other.mag.sub(&self.mag)),
        }
    }

    pub fn sub(&self, other: &BigInt) -> BigInt {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &BigInt) -> BigInt {
        BigInt::from_parts(self.neg != other.neg, self.mag.mul(&other.mag))
    }

    /// Truncating division: the quotient rounds toward zero and the remainder
    /// takes the sign of the dividend.
    pub fn divrem(&self, other: &BigInt) -> Result<(BigInt, BigInt), NumError> {
        if other.is_zero() {
            return Err(NumError::DivisionByZero);
        }
        let (q, r) = self.mag.divrem(&other.mag);
        Ok((
            BigInt::from_parts(self.neg != other.neg, q),
            BigInt::from_parts(self.neg, r),
        ))
    }

    pub fn pow(&self, e: u64) -> BigInt {
        BigInt::from_parts(self.neg && e % 2 == 1, self.mag.pow(e))
    }

    /// Parses an optionally signed run of decimal digits.
    pub fn parse(text: &str) -> Result<BigInt, NumError> {
        let (neg, digits) = match text.as_bytes().first() {
            Some(b'-') => (true, &text[1..]),
            Some(b'+') => (false, &text[1..]),
            _ => (false, text),
        };
        Nat::from_decimal_digits(digits)
            .map(|m| BigInt::from_parts(neg, m))
            .ok_or_else(|| NumError::Syntax {
                literal: text.to_string(),
                pos: 0,
            })
    }
}

impl PartialOrd for BigInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BigInt {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.neg, other.neg) {
            (false, true) => Ordering::Greater,
            (true, false) => Ordering::Less,
            (false, false) => self.mag.cmp(&other.mag),
            (true, true) => other.mag.cmp(&self.mag),
        }
    }
}

impl fmt::Display for BigInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.neg {
            f.write_str("-")?;
        }
        f.write_str(&self.mag.to_decimal_string())
    }
}

impl From<i64> for BigInt {
    fn from(v: i64) -> Self {
        BigInt::from_i64(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signed_arithmetic() {
        let a = BigInt::from_i64(-7);
        let b = BigInt::from_i64(2);
        assert_eq!(a.add(&b), BigInt::from_i64(-5));
        assert_eq!(a.sub(&b), BigInt::from_i64(-9));
        assert_eq!(a.mul(&b), BigInt::from_i64(-14));
        let (q, r) = a.divrem(&b).unwrap();
        assert_eq!((q, r), (BigInt::from_i64(-3), BigInt::from_i64(-1)));
        assert_eq!(BigInt::from_i64(2).pow(4), BigInt::from_i64(16));
        assert_eq!(BigInt::from_i64(-2).pow(3), BigInt::from_i64(-8));
    }

    #[test]
    fn zero_is_unsigned() {
        let z = BigInt::from_i64(3).sub(&BigInt::from_i64(3));
        assert_eq!(z.signum(), 0);
        assert!(!z.is_negative());
        assert_eq!(BigInt::zero().neg(), BigInt::zero());
    }

    #[test]
    fn i64_extremes() {
        assert_eq!(BigInt::from_i64(i64::MIN).to_i64(), Some(i64::MIN));
        assert_eq!(BigInt::from_i64(i64::MAX).to_i64(), Some(i64::MAX));
        assert_eq!(BigInt::from_i64(i64::MAX).add(&BigInt::from_i64(1)).to_i64(), None);
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(
            BigInt::from_i64(1).divrem(&BigInt::zero()),
            Err(NumError::DivisionByZero)
        );
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(BigInt::parse("54987").unwrap().to_string(), "54987");
        assert_eq!(BigInt::parse("-12").unwrap(), BigInt::from_i64(-12));
        assert!(BigInt::parse("1.5").is_err());
    }
}
