//! Multiple-precision numbers.
//!
//! Integers are exact and unbounded; floats carry a significand of
//! `32 · words` bits chosen by a [`PrecisionContext`] that every operation
//! takes explicitly. Arithmetic rounds to nearest, ties to even. Transcendental
//! kernels work with guard limbs and round once.

mod complex;
mod context;
pub mod elementary;
mod erfc;
mod error;
mod float;
pub mod format;
mod int;
mod nat;
mod pi;
mod real;

pub use complex::BigComplex;
pub use context::PrecisionContext;
pub use erfc::erfc;
pub use error::NumError;
pub use float::{BigFloat, Dyadic, EXP_LIMIT};
pub use format::{format_dyadic, format_float, format_int, format_real, parse_decimal};
pub use int::BigInt;
pub use nat::Nat;
pub use pi::{pi_bbp, pi_partial};
pub use real::{dot_exact, sum_exact, Real};
