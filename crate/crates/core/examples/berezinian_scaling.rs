//! Jacobian and Berezinian of x = 2x′, θ = θ′/2, and the weights it induces.

use oddsym::charts::{transform_density, Density, Transition};
use oddsym::expr::parse_transition;
use num_rational::Rational64;
use oddsym::superalgebra::{ChartId, SuperFunction};

pub fn run_example() -> oddsym::Result<()> {
    let t: Transition = parse_transition("2*x1; th1/2", ChartId(0), ChartId(1))?;
    println!("{t}");
    println!("jacobian:\n{}", t.jacobian()?);
    println!("Ber = {}", t.berezinian()?);

    for (num, den) in [(0, 1), (1, 2), (1, 1)] {
        let w = Rational64::new(num, den);
        let d = transform_density(&Density::new(w, SuperFunction::one())?, &t)?;
        println!("weight {w}: 1 becomes {}", d.coefficient());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(2);
    }
}
