use crate::bignum::{dot_exact, elementary, BigInt, Dyadic, PrecisionContext, Real};
use crate::error::{Error, Result};

/// Scalar arithmetic shared by broadcasting and zipping.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl ArithOp {
    pub fn symbol(self) -> &'static str {
        match self {
            ArithOp::Add => "+",
            ArithOp::Sub => "-",
            ArithOp::Mul => "*",
            ArithOp::Div => "/",
            ArithOp::Pow => "^",
        }
    }

    pub fn apply(self, a: &Real, b: &Real, ctx: &PrecisionContext) -> Result<Real> {
        Ok(match self {
            ArithOp::Add => a.add(b, ctx)?,
            ArithOp::Sub => a.sub(b, ctx)?,
            ArithOp::Mul => a.mul(b, ctx)?,
            ArithOp::Div => a.div(b, ctx)?,
            ArithOp::Pow => elementary::pow(a, b, ctx)?,
        })
    }
}

/// Vector of reals whose elements are either all integers or all floats.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NumVector {
    elems: Vec<Real>,
}

impl NumVector {
    /// Builds a vector, promoting every element to float if any one is.
    pub fn from_reals(elems: Vec<Real>, ctx: &PrecisionContext) -> Result<NumVector> {
        if elems.iter().all(Real::is_int) {
            return Ok(NumVector { elems });
        }
        let elems = elems
            .iter()
            .map(|e| e.promote(ctx))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(NumVector { elems })
    }

    pub fn from_ints(values: &[i64]) -> NumVector {
        NumVector {
            elems: values.iter().map(|&v| Real::int(v)).collect(),
        }
    }

    pub fn elems(&self) -> &[Real] {
        &self.elems
    }

    pub fn into_elems(self) -> Vec<Real> {
        self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// True for an empty vector or one holding integers.
    pub fn is_int(&self) -> bool {
        self.elems.first().is_none_or(Real::is_int)
    }

    pub fn to_f64(&self) -> Result<Vec<f64>> {
        self.elems
            .iter()
            .map(|e| e.to_f64().map_err(Error::from))
            .collect()
    }

    /// `v op s`, or `s op v` when `scalar_first`.
    pub fn broadcast(
        &self,
        op: ArithOp,
        s: &Real,
        scalar_first: bool,
        ctx: &PrecisionContext,
    ) -> Result<NumVector> {
        let out = self
            .elems
            .iter()
            .map(|e| {
                if scalar_first {
                    op.apply(s, e, ctx)
                } else {
                    op.apply(e, s, ctx)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        NumVector::from_reals(out, ctx)
    }

    pub fn zip(&self, op: ArithOp, other: &NumVector, ctx: &PrecisionContext) -> Result<NumVector> {
        if self.len() != other.len() {
            return Err(Error::Dimension(format!(
                "vector lengths {} and {} differ for '{}'",
                self.len(),
                other.len(),
                op.symbol()
            )));
        }
        let out = self
            .elems
            .iter()
            .zip(&other.elems)
            .map(|(a, b)| op.apply(a, b, ctx))
            .collect::<Result<Vec<_>>>()?;
        NumVector::from_reals(out, ctx)
    }

    /// Applies `f` to each component. The first failure is reported with its
    /// component index.
    pub fn map<F>(&self, ctx: &PrecisionContext, f: F) -> Result<NumVector>
    where
        F: Fn(&Real) -> Result<Real>,
    {
        let mut out = Vec::with_capacity(self.len());
        for (i, e) in self.elems.iter().enumerate() {
            match f(e) {
                Ok(v) => out.push(v),
                Err(Error::Domain(msg)) => {
                    return Err(Error::Domain(format!("{msg} (component {i})")))
                }
                Err(other) => return Err(other),
            }
        }
        NumVector::from_reals(out, ctx)
    }

    pub fn dot(&self, other: &NumVector, ctx: &PrecisionContext) -> Result<Real> {
        if self.len() != other.len() {
            return Err(Error::Dimension(format!(
                "dotprod needs equal lengths, got {} and {}",
                self.len(),
                other.len()
            )));
        }
        if self.is_empty() {
            return Err(Error::Dimension("dotprod of empty vectors".into()));
        }
        let pairs: Vec<_> = self.elems.iter().zip(&other.elems).collect();
        Ok(dot_exact(&pairs, ctx)?)
    }

    pub fn append(&self, tail: &[Real], ctx: &PrecisionContext) -> Result<NumVector> {
        let mut out = self.elems.clone();
        out.extend_from_slice(tail);
        NumVector::from_reals(out, ctx)
    }
}

/// Largest vector `sequence` will build.
pub const MAX_SEQUENCE_LEN: u64 = 10_000_000;

/// `start, start + step, …` up to `stop`. Each element is `start + i·step`
/// rounded once; the endpoint is included (exactly) when reached within
/// `|step| · 2^(-bits/2)`.
pub fn sequence(start: &Real, stop: &Real, step: &Real, ctx: &PrecisionContext) -> Result<NumVector> {
    if step.is_zero() {
        return Err(Error::Domain("sequence: step must be non-zero".into()));
    }
    let span = stop.sub(start, ctx)?;
    if !span.is_zero() && span.is_negative() != step.is_negative() {
        return Err(Error::Domain(
            "sequence: step points away from the stop value".into(),
        ));
    }
    let all_int = start.is_int() && stop.is_int() && step.is_int();
    let (count, snap_last) = if all_int {
        let (Real::Int(span), Real::Int(st)) = (&span, step) else {
            unreachable!("integer operands give integer span")
        };
        (span.divrem(st)?.0, false)
    } else {
        let ratio = span.to_dyadic().div_round(&step.to_dyadic(), ctx)?;
        let nearest = ratio.round_to_int();
        let reached = Dyadic::from_int(&nearest).mul(&step.to_dyadic()).add(&start.to_dyadic());
        let miss = reached.sub(&stop.to_dyadic());
        let tol = step.to_dyadic().mul_pow2(-(ctx.bits() as i64 / 2));
        let miss_abs = Dyadic { neg: false, ..miss };
        let tol_abs = Dyadic { neg: false, ..tol };
        if miss_abs.cmp_value(&tol_abs) != std::cmp::Ordering::Greater {
            (nearest, true)
        } else {
            (ratio.floor_to_int(), false)
        }
    };
    let n = count
        .to_i64()
        .filter(|&n| n >= 0 && (n as u64) < MAX_SEQUENCE_LEN)
        .ok_or_else(|| Error::Range("sequence: too many elements".into()))?;
    let mut out = Vec::with_capacity(n as usize + 1);
    let start_d = start.to_dyadic();
    let step_d = step.to_dyadic();
    for i in 0..=n {
        if all_int {
            let (Real::Int(s), Real::Int(st)) = (start, step) else {
                unreachable!()
            };
            out.push(Real::Int(s.add(&st.mul(&BigInt::from_i64(i)))));
        } else if snap_last && i == n {
            out.push(stop.promote(ctx)?);
        } else {
            let v = start_d.add(&Dyadic::from_i64(i).mul(&step_d));
            out.push(Real::Float(v.round(ctx)?));
        }
    }
    NumVector::from_reals(out, ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bignum::{format_real, parse_decimal};

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    fn num(s: &str) -> Real {
        parse_decimal(s, &ctx()).unwrap()
    }

    fn render(v: &NumVector) -> Vec<String> {
        v.elems().iter().map(|e| format_real(e, 8)).collect()
    }

    #[test]
    fn broadcast_identity_and_scale() {
        let c = ctx();
        let v = NumVector::from_ints(&[1, 2, 3]);
        assert_eq!(v.broadcast(ArithOp::Add, &Real::int(0), false, &c).unwrap(), v);
        let doubled = v.broadcast(ArithOp::Mul, &Real::int(2), false, &c).unwrap();
        assert_eq!(doubled, NumVector::from_ints(&[2, 4, 6]));
        let inv = v.broadcast(ArithOp::Div, &Real::int(6), true, &c).unwrap();
        assert_eq!(render(&inv), ["6", "3", "2"]);
    }

    #[test]
    fn mixed_elements_promote() {
        let c = ctx();
        let v = NumVector::from_reals(vec![Real::int(1), num("2.5")], &c).unwrap();
        assert!(v.elems().iter().all(|e| !e.is_int()));
        let halves = NumVector::from_ints(&[1, 2]).broadcast(ArithOp::Div, &Real::int(2), false, &c).unwrap();
        assert!(!halves.is_int());
        assert_eq!(render(&halves), ["0.5", "1"]);
    }

    #[test]
    fn zip_length_mismatch_names_both_lengths() {
        let c = ctx();
        let err = NumVector::from_ints(&[1, 2])
            .zip(ArithOp::Add, &NumVector::from_ints(&[1, 2, 3]), &c)
            .unwrap_err();
        assert!(err.to_string().contains("2 and 3"), "{err}");
    }

    #[test]
    fn dot_products() {
        let c = ctx();
        let d = NumVector::from_ints(&[1, -2]).dot(&NumVector::from_ints(&[-3, 4]), &c).unwrap();
        assert_eq!(d, Real::int(-11));
        let z = NumVector::from_ints(&[5, 7]).dot(&NumVector::from_ints(&[0, 0]), &c).unwrap();
        assert_eq!(z, Real::int(0));
        assert!(NumVector::from_ints(&[1]).dot(&NumVector::from_ints(&[1, 2]), &c).is_err());
    }

    #[test]
    fn append_cases() {
        let c = ctx();
        let v = NumVector::from_ints(&[1, -2]).append(&[Real::int(5)], &c).unwrap();
        assert_eq!(v, NumVector::from_ints(&[1, -2, 5]));
        let v = NumVector::default().append(&[Real::int(1)], &c).unwrap();
        assert_eq!(v, NumVector::from_ints(&[1]));
        let v = NumVector::from_ints(&[1]).append(&[num("2.5")], &c).unwrap();
        assert!(!v.is_int());
        assert_eq!(render(&v), ["1", "2.5"]);
    }

    #[test]
    fn map_reports_failing_component() {
        let c = ctx();
        let v = NumVector::from_ints(&[1, 2, -1]);
        let err = v
            .map(&c, |e| Ok(Real::Float(elementary::log(&e.to_float(&c)?, &c)?)))
            .unwrap_err();
        assert!(err.to_string().contains("component 2"), "{err}");
    }

    #[test]
    fn sequence_minus_one_to_one() {
        let c = ctx();
        let s = sequence(&Real::int(-1), &Real::int(1), &num("0.1"), &c).unwrap();
        assert_eq!(s.len(), 21);
        assert_eq!(format_real(&s.elems()[0], 8), "-1");
        assert_eq!(format_real(&s.elems()[20], 8), "1");
        assert_eq!(format_real(&s.elems()[5], 8), "-0.5");
    }

    #[test]
    fn sequence_edge_cases() {
        let c = ctx();
        let s = sequence(&Real::int(0), &Real::int(0), &Real::int(1), &c).unwrap();
        assert_eq!(s, NumVector::from_ints(&[0]));
        let s = sequence(&Real::int(0), &Real::int(1), &num("0.3"), &c).unwrap();
        assert_eq!(render(&s), ["0", "0.3", "0.6", "0.9"]);
        let s = sequence(&Real::int(5), &Real::int(1), &Real::int(-2), &c).unwrap();
        assert_eq!(s, NumVector::from_ints(&[5, 3, 1]));
        assert!(matches!(
            sequence(&Real::int(0), &Real::int(1), &Real::int(0), &c),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            sequence(&Real::int(0), &Real::int(1), &Real::int(-1), &c),
            Err(Error::Domain(_))
        ));
    }
}
