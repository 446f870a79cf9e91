//! Vectors and matrices over exact integers or rounded floats.

mod matrix;
mod vector;

pub use matrix::NumMatrix;
pub use vector::{sequence, ArithOp, NumVector, MAX_SEQUENCE_LEN};
