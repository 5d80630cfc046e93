//! The canonical odd bracket on ℝ^{2|2} and its graded axioms.

use oddsym::brackets::{check_axioms, odd_bracket, OddPoisson};
use oddsym::expr::parse;

pub fn run_example() -> oddsym::Result<()> {
    for (f, g) in [("x1", "th1"), ("th1", "x1"), ("x1*x2", "th1*th2"), ("x1^2*th2", "x2*th1*th2")] {
        let b = odd_bracket(&parse(f)?, &parse(g)?)?;
        println!("{{{f}, {g}}} = {b}");
    }

    let samples: Vec<_> = ["x1", "th1", "x1*th2", "x2^2*th1*th2", "x1 + th1*th2"].iter().map(|s| parse(s)).collect::<Result<_, _>>()?;
    let report = check_axioms(&OddPoisson, &samples)?;
    println!("axioms on {} triples: {}", report.triples, if report.passed() { "pass" } else { "FAIL" });
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(2);
    }
}
