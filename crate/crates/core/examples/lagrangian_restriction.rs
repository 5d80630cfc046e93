//! Restricting a semidensity to the Lagrangian graph θ = α(x) of a closed
//! odd-valued one-form, which yields a density on the base.

use oddsym::charts::Density;
use oddsym::expr::{parse, parse_form};
use oddsym::formsbridge::{form_to_semidensity, restrict_to_lagrangian, restriction_variation};

pub fn run_example() -> oddsym::Result<()> {
    let omega = parse_form("x1*x2 + eps2*x1*xi2 + x2*xi1*xi2", 2)?;
    let s = form_to_semidensity(&omega)?;
    println!("s = {s}");
    println!("on θ = 0: {}", restrict_to_lagrangian(2, &s, &[])?);

    // α = dφ with φ = ε₁x₁x₂
    let alpha = [parse("eps1*x2")?, parse("eps1*x1")?];
    println!("on θ = dφ: {}", restrict_to_lagrangian(2, &s, &alpha)?);
    match restrict_to_lagrangian(2, &s, &[parse("eps1*x2")?, parse("0")?]) {
        Ok(d) => println!("non-closed α gave {d}"),
        Err(e) => println!("non-closed α: {e}"),
    }

    let q = parse("eps1*x1*th1*th2")?;
    let s = Density::semidensity(parse("x1*th1 + x2")?);
    println!("first-order change under the flow of {q}: {}", restriction_variation(2, &s, &q)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(2);
    }
}
