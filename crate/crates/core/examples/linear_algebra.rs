//! Matrix construction, determinant, inverse and products.

use arbcalc::bignum::PrecisionContext;
use arbcalc::linalg::{NumMatrix, NumVector};
use arbcalc::runtime::{render_matrix, render_value, Value};

fn ints(v: &[i64]) -> NumVector {
    NumVector::from_ints(v)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ctx = PrecisionContext::default();
    let d = ctx.output_digits();

    let padded = NumMatrix::construct(&ints(&[1, 2, 3, 4, 5, 6]), 3, 3, &ctx)?;
    println!("zero-filled 3x3:\n{}\n", render_matrix(&padded, d));

    let m = NumMatrix::construct(&ints(&[1, 3, -1, 4]), 2, 2, &ctx)?;
    println!("det = {}", render_value(&Value::Real(m.det(&ctx)?), d));
    let inv = m.invert(&ctx)?;
    println!("inverse:\n{}", render_matrix(&inv, d));
    println!("product:\n{}", render_matrix(&m.mul(&inv, &ctx)?, d));

    let singular = NumMatrix::construct(&ints(&[1, 2, 2, 4]), 2, 2, &ctx)?;
    if let Err(e) = singular.invert(&ctx) {
        println!("{e}");
    }
    Ok(())
}
