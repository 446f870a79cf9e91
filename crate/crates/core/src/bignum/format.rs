//! Decimal conversion.
//!
//! Binary values are expanded to their exact decimal digits and then rounded
//! half-up to the requested number of significant digits, so printing never
//! suffers double rounding.

use super::{BigFloat, BigInt, Dyadic, Nat, NumError, PrecisionContext, Real};

/// Integers always print every digit.
pub fn format_int(v: &BigInt) -> String {
    v.to_string()
}

pub fn format_float(x: &BigFloat, digits: u32) -> String {
    format_dyadic(&x.to_dyadic(), digits)
}

pub fn format_real(x: &Real, digits: u32) -> String {
    match x {
        Real::Int(i) => format_int(i),
        Real::Float(f) => format_float(f, digits),
    }
}

/// Exact decimal expansion: returns digit string `d` and `q` such that the
/// magnitude equals `d · 10^q`.
fn exact_decimal(mag: &Nat, exp: i64) -> (String, i64) {
    if exp >= 0 {
        (mag.shl(exp as u64).to_decimal_string(), 0)
    } else {
        let k = exp.unsigned_abs();
        (mag.mul(&Nat::from_u64(5).pow(k)).to_decimal_string(), exp)
    }
}

/// Rounds a digit string half-up to at most `n` digits. Returns the kept
/// digits (trailing zeros stripped) and how many positions the leading digit
/// moved left because of a carry.
fn round_digits(digits: &str, n: usize) -> (String, i64) {
    if digits.len() <= n {
        return (digits.trim_end_matches('0').to_string(), 0);
    }
    let mut kept: Vec<u8> = digits.as_bytes()[..n].to_vec();
    let mut carry = 0;
    if digits.as_bytes()[n] >= b'5' {
        let mut i = n;
        loop {
            if i == 0 {
                kept.insert(0, b'1');
                kept.pop();
                carry = 1;
                break;
            }
            i -= 1;
            if kept[i] == b'9' {
                kept[i] = b'0';
            } else {
                kept[i] += 1;
                break;
            }
        }
    }
    let s = String::from_utf8(kept).expect("ascii digits");
    (s.trim_end_matches('0').to_string(), carry)
}

pub fn format_dyadic(x: &Dyadic, digits: u32) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let n = digits.max(1) as usize;
    let (all, q) = exact_decimal(&x.mag, x.exp);
    let lead = all.len() as i64 - 1 + q;
    let (d, carry) = round_digits(&all, n);
    let lead = lead + carry;
    let mut out = String::new();
    if x.neg {
        out.push('-');
    }
    if (-7..n as i64).contains(&lead) {
        if lead >= 0 {
            let int_len = lead as usize + 1;
            if d.len() <= int_len {
                out.push_str(&d);
                out.extend(std::iter::repeat_n('0', int_len - d.len()));
            } else {
                out.push_str(&d[..int_len]);
                out.push('.');
                out.push_str(&d[int_len..]);
            }
        } else {
            out.push_str("0.");
            out.extend(std::iter::repeat_n('0', (-lead - 1) as usize));
            out.push_str(&d);
        }
    } else {
        out.push_str(&d[..1]);
        if d.len() > 1 {
            out.push('.');
            out.push_str(&d[1..]);
        }
        out.push('e');
        out.push(if lead < 0 { '-' } else { '+' });
        out.push_str(&lead.unsigned_abs().to_string());
    }
    out
}

/// Parses an integer or fixed-point literal, with an optional exponent part.
///
/// Literals without a fractional part or exponent become exact integers;
/// anything else is rounded to the nearest value at `ctx`.
pub fn parse_decimal(literal: &str, ctx: &PrecisionContext) -> Result<Real, NumError> {
    let err = |pos: usize| NumError::Syntax {
        literal: literal.to_string(),
        pos,
    };
    let bytes = literal.as_bytes();
    let mut i = 0;
    let neg = match bytes.first() {
        Some(b'-') => {
            i = 1;
            true
        }
        Some(b'+') => {
            i = 1;
            false
        }
        _ => false,
    };
    let int_start = i;
    while i < bytes.len() && bytes[i].is_ascii_digit() {
        i += 1;
    }
    let int_digits = &literal[int_start..i];
    let mut frac_digits = "";
    let mut is_float = false;
    if i < bytes.len() && bytes[i] == b'.' {
        is_float = true;
        i += 1;
        let s = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        frac_digits = &literal[s..i];
    }
    if int_digits.is_empty() && frac_digits.is_empty() {
        return Err(err(int_start));
    }
    let mut exp10: i64 = 0;
    if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
        is_float = true;
        i += 1;
        let s = i;
        if i < bytes.len() && (bytes[i] == b'-' || bytes[i] == b'+') {
            i += 1;
        }
        let ds = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        if ds == i {
            return Err(err(i));
        }
        exp10 = literal[s..i].parse().map_err(|_| err(s))?;
    }
    if i != bytes.len() {
        return Err(err(i));
    }
    let all = format!("{int_digits}{frac_digits}");
    let mag = Nat::from_decimal_digits(&all).ok_or_else(|| err(int_start))?;
    if !is_float {
        return Ok(Real::Int(BigInt::from_parts(neg, mag)));
    }
    let scale = frac_digits.len() as i64 - exp10;
    let value = if scale <= 0 {
        BigFloat::from_rounded(neg, mag.mul(&Nat::pow10(scale.unsigned_abs())), 0, false, ctx)?
    } else {
        BigFloat::from_ratio(neg, &mag, &Nat::pow10(scale as u64), 0, ctx)?
    };
    Ok(Real::Float(value))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(words: u32) -> PrecisionContext {
        PrecisionContext::with_precision(words).unwrap()
    }

    fn float(s: &str, c: &PrecisionContext) -> BigFloat {
        match parse_decimal(s, c).unwrap() {
            Real::Float(f) => f,
            Real::Int(i) => BigFloat::from_int(&i, c).unwrap(),
        }
    }

    #[test]
    fn integers_print_without_fraction() {
        assert_eq!(format_real(&Real::Int(BigInt::from_i64(4)), 8), "4");
        assert_eq!(format_real(&Real::Int(BigInt::from_i64(-11)), 8), "-11");
        let c = ctx(8);
        assert_eq!(format_float(&BigFloat::from_i64(4, &c), 8), "4");
        assert_eq!(format_float(&BigFloat::from_i64(-10, &c), 8), "-10");
    }

    #[test]
    fn point_one_plus_point_two() {
        let c = ctx(2);
        let a = float("0.1", &c);
        let b = float("0.2", &c);
        assert_eq!(format_float(&a, 16), "0.1");
        assert_eq!(format_float(&a.add(&b, &c).unwrap(), 16), "0.3");
    }

    #[test]
    fn rounding_half_up_and_carry() {
        let c = ctx(4);
        assert_eq!(format_float(&float("0.125", &c), 2), "0.13");
        assert_eq!(format_float(&float("9.99", &c), 2), "10");
        assert_eq!(format_float(&float("-9.96", &c), 2), "-10");
        assert_eq!(format_float(&float("3.1415", &c), 8), "3.1415");
    }

    #[test]
    fn scientific_layout_outside_fixed_window() {
        let c = ctx(4);
        assert_eq!(format_float(&float("123456789.5", &c), 8), "1.2345679e+8");
        assert_eq!(format_float(&float("0.00000001234", &c), 8), "1.234e-8");
        assert_eq!(format_float(&float("0.0000001234", &c), 8), "0.0000001234");
        assert_eq!(format_float(&float("12345678.4", &c), 8), "12345678");
    }

    #[test]
    fn parse_rejects_malformed() {
        let c = ctx(2);
        for bad in ["", ".", "1.2.3", "1e", "12a", "--1"] {
            assert!(parse_decimal(bad, &c).is_err(), "{bad}");
        }
        assert!(matches!(parse_decimal("54987", &c), Ok(Real::Int(_))));
        assert!(matches!(parse_decimal("3.", &c), Ok(Real::Float(_))));
        assert_eq!(parse_decimal("0", &c).unwrap(), Real::Int(BigInt::zero()));
    }
}
