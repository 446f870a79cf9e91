use super::NumError;

/// Working precision (in 32-bit significand words) and display precision (in
/// significant decimal digits).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrecisionContext {
    words: u32,
    output_digits: u32,
}

impl PrecisionContext {
    pub const DEFAULT_WORDS: u32 = 8;
    pub const DEFAULT_OUTPUT_DIGITS: u32 = 8;

    pub fn new(words: u32, output_digits: u32) -> Result<Self, NumError> {
        if words == 0 {
            return Err(NumError::Domain {
                func: "precision".into(),
                value: "0".into(),
            });
        }
        if output_digits == 0 {
            return Err(NumError::Domain {
                func: "output_precision".into(),
                value: "0".into(),
            });
        }
        Ok(PrecisionContext {
            words,
            output_digits,
        })
    }

    /// Context with `words` limbs and the matching display width of
    /// `8 * words` digits.
    pub fn with_precision(words: u32) -> Result<Self, NumError> {
        Self::new(words, words.saturating_mul(8))
    }

    pub fn words(&self) -> u32 {
        self.words
    }

    pub fn bits(&self) -> u64 {
        32 * self.words as u64
    }

    pub fn output_digits(&self) -> u32 {
        self.output_digits
    }

    pub fn set_output_digits(&mut self, digits: u32) -> Result<(), NumError> {
        *self = Self::new(self.words, digits)?;
        Ok(())
    }

    /// Same display settings with `extra` additional limbs, used by kernels
    /// that round once at the end.
    pub fn guarded(&self, extra: u32) -> Self {
        PrecisionContext {
            words: self.words + extra,
            output_digits: self.output_digits,
        }
    }

    /// Context wide enough to hold at least `bits` significand bits.
    pub fn for_bits(bits: u64) -> Self {
        PrecisionContext {
            words: bits.div_ceil(32).max(1) as u32,
            output_digits: Self::DEFAULT_OUTPUT_DIGITS,
        }
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        PrecisionContext {
            words: Self::DEFAULT_WORDS,
            output_digits: Self::DEFAULT_OUTPUT_DIGITS,
        }
    }
}
