//! Descriptive statistics, one-sample tests and histogram binning.

mod beta;
mod descriptive;
mod hypothesis;

pub use beta::{beta_half, regularized_beta};
pub use descriptive::{histogram, mean, stddev, Histogram, MAX_BINS};
pub use hypothesis::{ttest, ztest, Decision, TTestResult, ZTestResult, ALPHA};
