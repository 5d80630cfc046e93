//! Quantum and classical master equations, closed semidensities, and the
//! odd constant ν of a volume form with Δ_ρ² = 0.

use oddsym::charts::{is_normal, Density, Transition};
use oddsym::expr::parse;
use oddsym::laplacians::VolumeForm;
use oddsym::master::{classical_master_check, exp_identity_literal, hbar_coefficients, nu_constant, quantum_master_residual, semidensity_master_check, MasterAction};
use oddsym::superalgebra::ChartId;

pub fn run_example() -> oddsym::Result<()> {
    let g = parse("x1*x2*th1*th2 + eps1*x1*th1")?;
    let (lhs, rhs) = exp_identity_literal(&g)?;
    println!("Δ₀ exp g = {lhs}\n(Δ₀g + ½{{g,g}}) exp g = {rhs}");

    for text in ["x1*x2", "x1*th1*th2 + x2", "x1^2 + th1*th2"] {
        let s = MasterAction::new(parse(text)?)?;
        let residual = quantum_master_residual(&s)?;
        let classical = classical_master_check(&s)?;
        println!("S = {text}");
        for (k, c) in hbar_coefficients(&residual)?.iter().enumerate() {
            println!("  ħ^{k}: {c}");
        }
        println!("  classical: {}, consistent with ħ → 0: {}", classical.satisfied(), classical.consistent());
    }

    let one_plus = Density::semidensity(parse("1 + eps1*th1")?);
    let tilted = Density::semidensity(parse("1 + eps1*x1*th1")?);
    println!("Δ({one_plus}) = {}", semidensity_master_check(&one_plus, None)?.delta);
    println!("Δ({tilted}) = {}", semidensity_master_check(&tilted, None)?.delta);

    let scaled = VolumeForm::new(parse("4")?)?;
    let flat = Transition::scaling(1, ChartId(0), ChartId(1));
    println!("ρ = 4:\n{}", is_normal(&scaled, &[flat])?);

    let root = parse("1 + eps1*x1*th1")?;
    let witness = VolumeForm::new(&root * &root)?;
    println!("ρ = ({root})²:\n{}", nu_constant(1, &witness)?);
    let root = parse("1 + x1*x2*th1*th2")?;
    match nu_constant(2, &VolumeForm::new(&root * &root)?) {
        Ok(r) => println!("{r}"),
        Err(e) => println!("ρ = ({root})²: {e}"),
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
