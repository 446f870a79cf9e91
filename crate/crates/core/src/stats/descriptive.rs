use crate::bignum::{BigFloat, Dyadic, PrecisionContext, Real};
use crate::error::{Error, Result};
use crate::linalg::NumVector;

/// Upper bound on the number of histogram bins.
pub const MAX_BINS: usize = 100_000;

fn require(v: &NumVector, min: usize, func: &str) -> Result<()> {
    if v.len() < min {
        return Err(Error::Domain(format!(
            "{func} needs at least {min} values, got {}",
            v.len()
        )));
    }
    Ok(())
}

pub(crate) fn exact_sum(v: &NumVector) -> Dyadic {
    v.elems().iter().fold(Dyadic::zero(), |acc, e| acc.add(&e.to_dyadic()))
}

/// Arithmetic mean, rounded once. Stays an integer when the values are
/// integers and the mean is whole.
pub fn mean(v: &NumVector, ctx: &PrecisionContext) -> Result<Real> {
    require(v, 1, "mean")?;
    let n = Dyadic::from_i64(v.len() as i64);
    let s = exact_sum(v);
    if v.is_int() {
        if let Some(s) = s.to_int() {
            return Ok(Real::Int(s).div(&Real::int(v.len() as i64), ctx)?);
        }
    }
    Ok(Real::Float(s.div_round(&n, ctx)?))
}

/// Exact `(n·Σx² − (Σx)², n·(n−1))`, whose quotient is the sample variance.
pub(crate) fn variance_ratio(v: &NumVector) -> (Dyadic, Dyadic) {
    let n = v.len() as i64;
    let mut s = Dyadic::zero();
    let mut sq = Dyadic::zero();
    for e in v.elems() {
        let d = e.to_dyadic();
        sq = sq.add(&d.mul(&d));
        s = s.add(&d);
    }
    let num = Dyadic::from_i64(n).mul(&sq).sub(&s.mul(&s));
    (num, Dyadic::from_i64(n).mul(&Dyadic::from_i64(n - 1)))
}

/// Sample standard deviation (denominator `n − 1`) at working precision
/// `w`, unrounded to the caller's context.
pub(crate) fn stddev_at(v: &NumVector, w: &PrecisionContext) -> Result<BigFloat> {
    let (num, den) = variance_ratio(v);
    Ok(num.div_round(&den, w)?.sqrt(w)?)
}

/// Sample standard deviation with denominator `n − 1`.
pub fn stddev(v: &NumVector, ctx: &PrecisionContext) -> Result<Real> {
    require(v, 2, "stddev")?;
    let w = ctx.guarded(2);
    Ok(Real::Float(stddev_at(v, &w)?.round_to(ctx)?))
}

/// Equal-width bin counts over `[lo, hi]`; bins are right-open except the
/// last, which is closed.
#[derive(Clone, Debug, PartialEq)]
pub struct Histogram {
    pub lo: f64,
    pub hi: f64,
    pub counts: Vec<u64>,
}

impl Histogram {
    pub fn edges(&self) -> Vec<f64> {
        let k = self.counts.len();
        (0..=k)
            .map(|i| self.lo + (self.hi - self.lo) * i as f64 / k as f64)
            .collect()
    }
}

/// `⌊num / den⌋` for `num ≥ 0`, `den > 0`.
fn floor_ratio(num: &Dyadic, den: &Dyadic) -> u64 {
    let e = num.exp.min(den.exp);
    let n = num.mag.shl((num.exp - e) as u64);
    let d = den.mag.shl((den.exp - e) as u64);
    n.divrem(&d).0.to_u64().unwrap_or(u64::MAX)
}

/// Bins `v` into `bins` equal-width intervals (default `⌈√n⌉`). Bin
/// membership is decided exactly, not after conversion to doubles. When all
/// values coincide the range is widened to one unit centred on them.
pub fn histogram(v: &NumVector, bins: Option<usize>) -> Result<Histogram> {
    require(v, 1, "frequency")?;
    let k = match bins {
        Some(0) => return Err(Error::Domain("frequency: bins must be positive".into())),
        Some(b) if b > MAX_BINS => {
            return Err(Error::Domain(format!("frequency: at most {MAX_BINS} bins")));
        }
        Some(b) => b,
        None => (v.len() as f64).sqrt().ceil() as usize,
    };
    let vals: Vec<Dyadic> = v.elems().iter().map(Real::to_dyadic).collect();
    let mut lo = vals[0].clone();
    let mut hi = vals[0].clone();
    for d in &vals[1..] {
        if d.cmp_value(&lo).is_lt() {
            lo = d.clone();
        }
        if d.cmp_value(&hi).is_gt() {
            hi = d.clone();
        }
    }
    if lo.cmp_value(&hi).is_eq() {
        let half = Dyadic::from_i64(1).mul_pow2(-1);
        lo = lo.sub(&half);
        hi = hi.add(&half);
    }
    let width = hi.sub(&lo);
    let kd = Dyadic::from_i64(k as i64);
    let mut counts = vec![0u64; k];
    for d in &vals {
        let idx = floor_ratio(&d.sub(&lo).mul(&kd), &width).min(k as u64 - 1);
        counts[idx as usize] += 1;
    }
    let to_f64 = |d: &Dyadic| Real::Float(d.round(&PrecisionContext::for_bits(64)).expect("in range")).to_f64();
    Ok(Histogram {
        lo: to_f64(&lo)?,
        hi: to_f64(&hi)?,
        counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bignum::format_real;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    fn sample() -> NumVector {
        NumVector::from_ints(&[9, 3, -1, -2, 4, 5])
    }

    #[test]
    fn mean_of_sample() {
        assert_eq!(mean(&sample(), &ctx()).unwrap(), Real::int(3));
        let m = mean(&NumVector::from_ints(&[1, 2]), &ctx()).unwrap();
        assert_eq!(format_real(&m, 8), "1.5");
        assert!(mean(&NumVector::default(), &ctx()).is_err());
    }

    #[test]
    fn stddev_of_sample() {
        let s = stddev(&sample(), &ctx()).unwrap();
        // Variance 82/5: squared deviations 36+0+16+25+1+4 over 5.
        assert_eq!(format_real(&s, 8), "4.0496913");
        let c = stddev(&NumVector::from_ints(&[7, 7]), &ctx()).unwrap();
        assert!(c.is_zero());
        assert!(matches!(stddev(&NumVector::from_ints(&[1]), &ctx()), Err(Error::Domain(_))));
    }

    #[test]
    fn histogram_counts() {
        let h = histogram(&NumVector::from_ints(&[0, 1]), Some(2)).unwrap();
        assert_eq!(h.counts, vec![1, 1]);
        let h = histogram(&NumVector::from_ints(&[1, 1, 1]), None).unwrap();
        assert_eq!(h.counts.iter().filter(|&&c| c > 0).count(), 1);
        assert_eq!(h.counts.iter().sum::<u64>(), 3);
        assert!(histogram(&NumVector::default(), None).is_err());
    }

    #[test]
    fn last_bin_is_closed() {
        let h = histogram(&NumVector::from_ints(&[0, 1, 2, 3]), Some(3)).unwrap();
        assert_eq!(h.counts, vec![1, 1, 2]);
        assert_eq!(h.edges(), vec![0.0, 1.0, 2.0, 3.0]);
    }
}
