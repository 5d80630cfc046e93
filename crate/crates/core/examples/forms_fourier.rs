//! Differential forms on ℝⁿ as semidensities on ΠT*ℝⁿ.

use oddsym::expr::{parse, parse_form};
use oddsym::formsbridge::{commutation_square, de_rham, divergence_correspondence, form_to_semidensity, hodge, inverse_hodge, semidensity_to_form, BaseDensity};

pub fn run_example() -> oddsym::Result<()> {
    for text in ["x1*x2", "x1*xi1 + 3*xi2", "5*xi1*xi2"] {
        let omega = parse_form(text, 2)?;
        let s = form_to_semidensity(&omega)?;
        println!("{omega}  ->  {s}  ->  {}", semidensity_to_form(2, &s)?);
    }

    let omega = parse_form("x1^2*x2*xi3 + x2*x3*xi1*xi2", 3)?;
    let (lhs, rhs) = commutation_square(&omega)?;
    println!("d({omega}) = {}", de_rham(&omega));
    println!("Δ s_ω = {lhs}");
    println!("s_dω  = {rhs}");

    let sigma = BaseDensity::new(parse("1 + x1^2")?)?;
    let t = parse("x1*x2*th1 + th1*th2")?;
    let w = hodge(2, &t, &sigma)?;
    println!("multivector {t} with density {sigma}: form {w}, back {}", inverse_hodge(&w, &sigma)?);
    let div = divergence_correspondence(&t, &sigma)?;
    println!("Δ_σ T = {}, divergence agrees: {}", div.laplacian, div.holds());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(2);
    }
}
