//! Elementary functions at 192 bits and the identities they satisfy.

use arbcalc::bignum::elementary::{cos, exp, log, sin, sqrt};
use arbcalc::bignum::{format_float, BigFloat, PrecisionContext};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ctx = PrecisionContext::with_precision(6)?;
    let digits = ctx.output_digits();
    let two = BigFloat::from_i64(2, &ctx);
    let x = BigFloat::from_fraction(7, 3, &ctx)?;

    println!("log(2)  = {}", format_float(&log(&two, &ctx)?, digits));
    println!("exp(1)  = {}", format_float(&exp(&BigFloat::from_i64(1, &ctx), &ctx)?, digits));
    println!("sqrt(2) = {}", format_float(&sqrt(&two, &ctx)?, digits));
    println!("sin(7/3) = {}", format_float(&sin(&x, &ctx)?, digits));

    let (s, c) = (sin(&x, &ctx)?, cos(&x, &ctx)?);
    let one = s.mul(&s, &ctx)?.add(&c.mul(&c, &ctx)?, &ctx)?;
    let residual = one.sub(&BigFloat::from_i64(1, &ctx), &ctx)?;
    println!("sin^2 + cos^2 - 1 = {}", format_float(&residual, 5));

    match log(&BigFloat::from_i64(-1, &ctx), &ctx) {
        Err(e) => println!("log(-1): {e}"),
        Ok(v) => println!("log(-1) = {}", format_float(&v, digits)),
    }
    Ok(())
}
