//! Statements parsed to syntax trees and printed back with minimal
//! parentheses.

use arbcalc::lang::{parse_source, tokenize};

fn main() {
    let source = "2^( 3 + 1 ) / 4\n\
                  $MyVar = -(2^-3)^2 * (1 - 2)\n\
                  plot($x, $y, %\n  xtitle=\"x [rad]\")\n\
                  help invert\n\
                  1 + * 2\n\
                  {[1, 3, -1, 4], 2, 2}";
    for parsed in parse_source(source) {
        match parsed {
            Ok(stmt) => println!("{stmt:<40} {stmt:?}"),
            Err(e) => println!("{e}"),
        }
    }
    let tokens = tokenize("$x = sQRt(2) // comment").expect("valid source");
    let shown: Vec<String> = tokens.iter().map(|t| t.to_string()).collect();
    println!("{}", shown.join(" "));
}
