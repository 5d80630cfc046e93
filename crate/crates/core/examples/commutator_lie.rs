//! The commutator of the canonical Laplacian with multiplication by f is the
//! Lie derivative along the Hamiltonian field of f, and δ_Q commutes with Δ.

use oddsym::charts::{commutation_check, commutator_relation, delta_q, flow_derivative, Density};
use oddsym::expr::parse;

pub fn run_example() -> oddsym::Result<()> {
    let s = Density::semidensity(parse("1 + x1*x2*th1 + th1*th2")?);
    for text in ["3", "x1*th1", "x2^2*th1*th2 + x1", "eps1*x1*th2"] {
        let f = parse(text)?;
        let r = commutator_relation(&s, &f)?;
        println!("f = {text}: [Δ,f]s = {}, L s = {}, equal: {}", r.commutator, r.lie, r.holds());
    }

    let q = parse("eps1*x1*th1*th2")?;
    println!("δ_Q s = {}", delta_q(&q, &s)?);
    println!("d/dt of the pulled back semidensity = {}", flow_derivative(&q, &s)?);
    println!("Δδ_Q = δ_QΔ: {}", commutation_check(&q, &s)?.holds());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(2);
    }
}
