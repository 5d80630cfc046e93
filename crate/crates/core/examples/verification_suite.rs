//! Seeded batch verification of every identity, and a deliberately broken
//! bracket that the suite catches.

use oddsym::brackets::{odd_bracket, FnBracket};
use oddsym::superalgebra::{Parity, SuperFunction};
use oddsym::suite::{run_suite, run_suite_with, SuiteConfig, SuiteName};

pub fn run_example() -> oddsym::Result<()> {
    let report = run_suite("all", 2, 7, 5)?;
    println!("{report}");

    // a sign error on (even, odd) arguments only
    let flipped = FnBracket {
        epsilon: Parity::Odd,
        f: |f: &SuperFunction, g: &SuperFunction| {
            let b = odd_bracket(f, g)?;
            Ok(if f.is_even() && g.is_odd() { -b } else { b })
        },
    };
    let cfg = SuiteConfig { bracket: &flipped, ..SuiteConfig::new(2, 7, 5) };
    let broken = run_suite_with(SuiteName::Axioms, &cfg)?;
    println!("with the sign error, failing: {}", broken.failing_tags().join(", "));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(2);
    }
}
