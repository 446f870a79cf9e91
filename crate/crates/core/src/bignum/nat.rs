//! Unsigned limb arithmetic shared by the integer and float types.
//!
//! Magnitudes are stored little-endian in 32-bit limbs with no zero limb at
//! the top, so the empty vector is zero and equality is structural.

use std::cmp::Ordering;
use std::fmt;

const LIMB_BITS: u64 = 32;
const BASE: u64 = 1 << 32;

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Nat {
    limbs: Vec<u32>,
}

impl fmt::Debug for Nat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Nat({})", self.to_decimal_string())
    }
}

impl Nat {
    pub fn zero() -> Self {
        Nat { limbs: Vec::new() }
    }

    pub fn one() -> Self {
        Nat::from_u64(1)
    }

    pub fn from_u64(v: u64) -> Self {
        let mut n = Nat {
            limbs: vec![v as u32, (v >> 32) as u32],
        };
        n.normalize();
        n
    }

    /// Builds a magnitude from little-endian limbs, trimming zero limbs.
    pub fn from_limbs(limbs: Vec<u32>) -> Self {
        let mut n = Nat { limbs };
        n.normalize();
        n
    }

    pub fn limbs(&self) -> &[u32] {
        &self.limbs
    }

    pub fn into_limbs(self) -> Vec<u32> {
        self.limbs
    }

    fn normalize(&mut self) {
        while self.limbs.last() == Some(&0) {
            self.limbs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.limbs.len() == 1 && self.limbs[0] == 1
    }

    pub fn is_odd(&self) -> bool {
        self.limbs.first().is_some_and(|l| l & 1 == 1)
    }

    pub fn bit_len(&self) -> u64 {
        match self.limbs.last() {
            None => 0,
            Some(top) => {
                (self.limbs.len() as u64 - 1) * LIMB_BITS + (LIMB_BITS - top.leading_zeros() as u64)
            }
        }
    }

    pub fn bit(&self, i: u64) -> bool {
        let limb = (i / LIMB_BITS) as usize;
        limb < self.limbs.len() && (self.limbs[limb] >> (i % LIMB_BITS)) & 1 == 1
    }

    /// True when any of the `n` lowest bits is set.
    pub fn low_bits_nonzero(&self, n: u64) -> bool {
        let full = (n / LIMB_BITS) as usize;
        let rest = n % LIMB_BITS;
        if self.limbs.iter().take(full).any(|&l| l != 0) {
            return true;
        }
        if rest > 0 && full < self.limbs.len() {
            return self.limbs[full] & ((1u32 << rest) - 1) != 0;
        }
        false
    }

    pub fn trailing_zeros(&self) -> u64 {
        for (i, &l) in self.limbs.iter().enumerate() {
            if l != 0 {
                return i as u64 * LIMB_BITS + l.trailing_zeros() as u64;
            }
        }
        0
    }

    pub fn to_u64(&self) -> Option<u64> {
        match self.limbs.len() {
            0 => Some(0),
            1 => Some(self.limbs[0] as u64),
            2 => Some(self.limbs[0] as u64 | (self.limbs[1] as u64) << 32),
            _ => None,
        }
    }

    pub fn add(&self, other: &Nat) -> Nat {
        let (long, short) = if self.limbs.len() >= other.limbs.len() {
            (&self.limbs, &other.limbs)
        } else {
            (&other.limbs, &self.limbs)
        };
        let mut out = Vec::with_capacity(long.len() + 1);
        let mut carry = 0u64;
        for i in 0..long.len() {
            let s = long[i] as u64 + short.get(i).copied().unwrap_or(0) as u64 + carry;
            out.push(s as u32);
            carry = s >> 32;
        }
        if carry > 0 {
            out.push(carry as u32);
        }
        Nat::from_limbs(out)
    }

    /// `self - other`; the caller guarantees `self >= other`.
    pub fn sub(&self, other: &Nat) -> Nat {
        debug_assert!(*self >= *other, "Nat::sub underflow");
        let mut out = Vec::with_capacity(self.limbs.len());
        let mut borrow = 0i64;
        for i in 0..self.limbs.len() {
            let mut d = self.limbs[i] as i64 - other.limbs.get(i).copied().unwrap_or(0) as i64 - borrow;
            if d < 0 {
                d += BASE as i64;
                borrow = 1;
            } else {
                borrow = 0;
            }
            out.push(d as u32);
        }
        Nat::from_limbs(out)
    }

    pub fn add_small(&self, v: u32) -> Nat {
        self.add(&Nat::from_u64(v as u64))
    }

    pub fn mul(&self, other: &Nat) -> Nat {
        if self.is_zero() || other.is_zero() {
            return Nat::zero();
        }
        let mut out = vec![0u32; self.limbs.len() + other.limbs.len()];
        for (i, &a) in self.limbs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let mut carry = 0u64;
            for (j, &b) in other.limbs.iter().enumerate() {
                let t = a as u64 * b as u64 + out[i + j] as u64 + carry;
                out[i + j] = t as u32;
                carry = t >> 32;
            }
            let mut k = i + other.limbs.len();
            while carry > 0 {
                let t = out[k] as u64 + carry;
                out[k] = t as u32;
                carry = t >> 32;
                k += 1;
            }
        }
        Nat::from_limbs(out)
    }

    pub fn mul_small(&self, v: u32) -> Nat {
        let mut out = Vec::with_capacity(self.limbs.len() + 1);
        let mut carry = 0u64;
        for &l in &self.limbs {
            let t = l as u64 * v as u64 + carry;
            out.push(t as u32);
            carry = t >> 32;
        }
        out.push(carry as u32);
        Nat::from_limbs(out)
    }

    pub fn pow(&self, mut e: u64) -> Nat {
        let mut base = self.clone();
        let mut acc = Nat::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn shl(&self, bits: u64) -> Nat {
        if self.is_zero() {
            return Nat::zero();
        }
        let limb_shift = (bits / LIMB_BITS) as usize;
        let bit_shift = (bits % LIMB_BITS) as u32;
        let mut out = vec![0u32; limb_shift];
        out.reserve(self.limbs.len() + 1);
        if bit_shift == 0 {
            out.extend_from_slice(&self.limbs);
        } else {
            let mut carry = 0u32;
            for &l in &self.limbs {
                out.push((l << bit_shift) | carry);
                carry = l >> (32 - bit_shift);
            }
            out.push(carry);
        }
        Nat::from_limbs(out)
    }

    pub fn shr(&self, bits: u64) -> Nat {
        let limb_shift = (bits / LIMB_BITS) as usize;
        if limb_shift >= self.limbs.len() {
            return Nat::zero();
        }
        let bit_shift = (bits % LIMB_BITS) as u32;
        let src = &self.limbs[limb_shift..];
        let mut out = Vec::with_capacity(src.len());
        if bit_shift == 0 {
            out.extend_from_slice(src);
        } else {
            for i in 0..src.len() {
                let hi = src.get(i + 1).copied().unwrap_or(0);
                out.push((src[i] >> bit_shift) | (hi << (32 - bit_shift)));
            }
        }
        Nat::from_limbs(out)
    }

    pub fn divrem_small(&self, d: u32) -> (Nat, u32) {
        assert!(d != 0, "Nat::divrem_small by zero");
        let mut out = vec![0u32; self.limbs.len()];
        let mut rem = 0u64;
        for i in (0..self.limbs.len()).rev() {
            let cur = (rem << 32) | self.limbs[i] as u64;
            out[i] = (cur / d as u64) as u32;
            rem = cur % d as u64;
        }
        (Nat::from_limbs(out), rem as u32)
    }

    /// Quotient and remainder (Knuth, TAOCP vol. 2, algorithm D).
    ///
    /// Panics on a zero divisor; callers raise `DivisionByZero` first.
    pub fn divrem(&self, d: &Nat) -> (Nat, Nat) {
        assert!(!d.is_zero(), "Nat::divrem by zero");
        if self < d {
            return (Nat::zero(), self.clone());
        }
        if d.limbs.len() == 1 {
            let (q, r) = self.divrem_small(d.limbs[0]);
            return (q, Nat::from_u64(r as u64));
        }
        let shift = d.limbs.last().unwrap().leading_zeros() as u64;
        let v = d.shl(shift).limbs;
        let mut u = self.shl(shift).limbs;
        if u.len() == self.limbs.len() {
            u.push(0);
        }
        let n = v.len();
        let m = u.len() - n - 1;
        let mut q = vec![0u32; m + 1];
        let v_top = v[n - 1] as u64;
        let v_next = v[n - 2] as u64;
        for j in (0..=m).rev() {
            let num = ((u[j + n] as u64) << 32) | u[j + n - 1] as u64;
            let mut qhat = num / v_top;
            let mut rhat = num % v_top;
            while qhat >= BASE || qhat * v_next > ((rhat << 32) | u[j + n - 2] as u64) {
                qhat -= 1;
                rhat += v_top;
                if rhat >= BASE {
                    break;
                }
            }
            let mut borrow = 0i64;
            let mut carry = 0u64;
            for i in 0..n {
                let p = qhat * v[i] as u64 + carry;
                carry = p >> 32;
                let t = u[i + j] as i64 - borrow - (p & 0xffff_ffff) as i64;
                u[i + j] = t as u32;
                borrow = (t < 0) as i64;
            }
            let t = u[j + n] as i64 - borrow - carry as i64;
            u[j + n] = t as u32;
            if t < 0 {
                qhat -= 1;
                let mut c = 0u64;
                for i in 0..n {
                    let s = u[i + j] as u64 + v[i] as u64 + c;
                    u[i + j] = s as u32;
                    c = s >> 32;
                }
                u[j + n] = u[j + n].wrapping_add(c as u32);
            }
            q[j] = qhat as u32;
        }
        u.truncate(n);
        let r = Nat::from_limbs(u).shr(shift);
        (Nat::from_limbs(q), r)
    }

    /// Floor of the square root.
    pub fn isqrt(&self) -> Nat {
        if self.is_zero() {
            return Nat::zero();
        }
        let mut x = Nat::one().shl(self.bit_len().div_ceil(2));
        loop {
            let y = x.add(&self.divrem(&x).0).shr(1);
            if y >= x {
                return x;
            }
            x = y;
        }
    }

    pub fn pow10(e: u64) -> Nat {
        Nat::from_u64(10).pow(e)
    }

    pub fn to_decimal_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut chunks = Vec::new();
        let mut cur = self.clone();
        while !cur.is_zero() {
            let (q, r) = cur.divrem_small(1_000_000_000);
            chunks.push(r);
            cur = q;
        }
        let mut s = chunks.pop().unwrap().to_string();
        for c in chunks.iter().rev() {
            s.push_str(&format!("{c:09}"));
        }
        s
    }

    /// Parses a run of ASCII decimal digits. Returns `None` on any other byte
    /// or on empty input.
    pub fn from_decimal_digits(digits: &str) -> Option<Nat> {
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let mut acc = Nat::zero();
        for chunk in digits.as_bytes().chunks(9) {
            let v: u32 = std::str::from_utf8(chunk).ok()?.parse().ok()?;
            acc = acc.mul_small(10u32.pow(chunk.len() as u32)).add_small(v);
        }
        Some(acc)
    }
}

impl PartialOrd for Nat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Nat {
    fn cmp(&self, other: &Self) -> Ordering {
        self.limbs
            .len()
            .cmp(&other.limbs.len())
            .then_with(|| self.limbs.iter().rev().cmp(other.limbs.iter().rev()))
    }
}

impl fmt::Display for Nat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal_string())
    }
}
