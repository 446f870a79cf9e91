//! π from the Bailey-Borwein-Plouffe series at increasing precision.

use arbcalc::bignum::{format_float, pi_bbp, pi_partial, PrecisionContext};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for words in [1, 2, 4, 6, 16, 64] {
        let ctx = PrecisionContext::with_precision(words)?;
        let pi = pi_bbp(&ctx)?;
        println!("{:>3} words, {:>5} bits: {}", words, ctx.bits(), format_float(&pi, ctx.output_digits()));
    }
    let ctx = PrecisionContext::with_precision(2)?;
    for terms in 1..=4 {
        let partial = pi_partial(terms, &ctx)?;
        println!("{terms} term(s): {}", format_float(&partial, 16));
    }
    Ok(())
}
