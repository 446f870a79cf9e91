//! Delimited-text import with header detection and 0-based column access.

use arbcalc::bignum::PrecisionContext;
use arbcalc::dataset::{Dataset, ImportOptions};
use arbcalc::runtime::{render_vector, Session};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ctx = PrecisionContext::default();
    let text = "X\tY\tsite\n0.6439767\t0.71\tnorth\n0.0746277\t0.12\tsouth\n0.7903151\t0.88\teast\n";
    let d = Dataset::parse(text, ImportOptions::default(), &ctx)?;
    println!("{}", d.summary());
    println!("column 0: {}", render_vector(&d.column(0)?, 8));
    if let Err(e) = d.column(2) {
        println!("column 2: {e}");
    }

    let mut session = Session::new();
    session.insert_dataset("field", d);
    for item in session.run("$field[1]\nmean($field[1])\nstddev($field[0])") {
        println!("{}", item.text);
    }
    Ok(())
}
