//! The coordinate Laplacian Δ₀ and the Laplacian Δ_ρ of a volume form.

use oddsym::expr::parse;
use oddsym::laplacians::{cocycle_check, delta0, delta_change, delta_rho, divergence, square_hamiltonian, VolumeForm};

pub fn run_example() -> oddsym::Result<()> {
    let f = parse("x1*x2*th1 + x1^2*th2 + x2*th1*th2*eps1")?;
    println!("f = {f}");
    println!("Δ₀f = {}", delta0(&f));
    println!("Δ₀Δ₀f = {}", delta0(&delta0(&f)));

    let rho = VolumeForm::new(parse("(1 + x1^2)*(1 + th1*th2)")?)?;
    println!("ρ = {}", rho.coefficient());
    println!("Δ_ρ f = {}", delta_rho(&rho, &f)?);
    println!("div_ρ f = {}", divergence(&rho, &f)?);

    // ρ′ = g²ρ
    let rho2 = rho.rescale(&parse("(x2 + 1)^2")?)?;
    println!("change of volume form holds: {}", delta_change(&rho, &rho2, &f)?.holds());
    println!("cocycle relation holds: {}", cocycle_check(&rho, &rho2, &f)?.holds());

    let root = parse("1 + x1*x2*th1*th2")?;
    let square = VolumeForm::new(&root * &root)?;
    println!("Δ_ρ² for ρ = ({root})² is the Hamiltonian field of {}", square_hamiltonian(&square)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(2);
    }
}
