use super::{NumError, PrecisionContext, Real};

/// Complex number with integer-or-float parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigComplex {
    pub re: Real,
    pub im: Real,
}

impl BigComplex {
    pub fn new(re: Real, im: Real) -> Self {
        BigComplex { re, im }
    }

    pub fn from_real(re: Real) -> Self {
        BigComplex { re, im: Real::int(0) }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn neg(&self) -> BigComplex {
        BigComplex::new(self.re.neg(), self.im.neg())
    }

    pub fn conj(&self) -> BigComplex {
        BigComplex::new(self.re.clone(), self.im.neg())
    }

    pub fn add(&self, o: &BigComplex, ctx: &PrecisionContext) -> Result<BigComplex, NumError> {
        Ok(BigComplex::new(self.re.add(&o.re, ctx)?, self.im.add(&o.im, ctx)?))
    }

    pub fn sub(&self, o: &BigComplex, ctx: &PrecisionContext) -> Result<BigComplex, NumError> {
        Ok(BigComplex::new(self.re.sub(&o.re, ctx)?, self.im.sub(&o.im, ctx)?))
    }

    pub fn mul(&self, o: &BigComplex, ctx: &PrecisionContext) -> Result<BigComplex, NumError> {
        let re = self.re.mul(&o.re, ctx)?.sub(&self.im.mul(&o.im, ctx)?, ctx)?;
        let im = self.re.mul(&o.im, ctx)?.add(&self.im.mul(&o.re, ctx)?, ctx)?;
        Ok(BigComplex::new(re, im))
    }

    pub fn div(&self, o: &BigComplex, ctx: &PrecisionContext) -> Result<BigComplex, NumError> {
        if o.is_zero() {
            return Err(NumError::DivisionByZero);
        }
        let den = o.re.mul(&o.re, ctx)?.add(&o.im.mul(&o.im, ctx)?, ctx)?;
        let re = self.re.mul(&o.re, ctx)?.add(&self.im.mul(&o.im, ctx)?, ctx)?;
        let im = self.im.mul(&o.re, ctx)?.sub(&self.re.mul(&o.im, ctx)?, ctx)?;
        Ok(BigComplex::new(re.div(&den, ctx)?, im.div(&den, ctx)?))
    }

    /// Integer power by repeated squaring; negative exponents invert.
    pub fn powi(&self, e: i64, ctx: &PrecisionContext) -> Result<BigComplex, NumError> {
        let mut base = self.clone();
        let mut acc = BigComplex::from_real(Real::int(1));
        let mut n = e.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base, ctx)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base, ctx)?;
            }
        }
        if e < 0 {
            BigComplex::from_real(Real::int(1)).div(&acc, ctx)
        } else {
            Ok(acc)
        }
    }
}
