//! Brackets derived from a fiber-quadratic Hamiltonian on ΠT*ℝ³.
//!
//! An even bivector Hamiltonian gives a Poisson bracket on the base, and
//! the Jacobi identity of that bracket fails exactly when {𝔖,𝔖} ≠ 0.
//! An even quadratic Hamiltonian on T*ℝ³ gives a symmetric form instead.

use oddsym::brackets::{check_axioms, Axiom, MasterHamiltonian, PhaseSpace};
use oddsym::superalgebra::{Coord, SuperFunction};

fn x(i: u32) -> SuperFunction {
    SuperFunction::x(i)
}

fn space() -> PhaseSpace {
    PhaseSpace::ParityCotangent(vec![Coord::x(1), Coord::x(2), Coord::x(3)])
}

/// `π^{12} ψ₁ψ₂ + π^{23} ψ₂ψ₃ + π^{31} ψ₃ψ₁`.
pub fn bivector(p12: SuperFunction, p23: SuperFunction, p31: SuperFunction) -> oddsym::Result<MasterHamiltonian> {
    MasterHamiltonian::from_components(space(), &[(1, 2, p12), (2, 3, p23), (3, 1, p31)])
}

pub fn run_example() -> oddsym::Result<()> {
    let base = [x(1), x(2), x(3)];
    let cases = [("rotation algebra", bivector(x(3), x(1), x(2))?), ("twisted", bivector(x(3), x(2), SuperFunction::zero())?)];
    for (name, s) in &cases {
        let condition = s.master_condition()?;
        let report = check_axioms(&s.as_bracket(), &base)?;
        println!("{name}: S = {}", s.function());
        println!("  {{S,S}} = {condition}");
        println!("  {{x1,x2}} = {}, jacobi holds: {}", s.derived_bracket(&x(1), &x(2))?, !report.failed(Axiom::Jacobi));
    }

    // flipped parity: an even quadratic Hamiltonian on T*ℝ³
    let metric = MasterHamiltonian::from_components(
        PhaseSpace::Cotangent(vec![Coord::x(1), Coord::x(2), Coord::x(3)]),
        &[(1, 1, SuperFunction::one()), (2, 3, x(1))],
    )?;
    let f = &x(1) * &x(2);
    let g = &x(3) * &x(3);
    println!("metric: kind {:?}, {{S,S}} = {}", metric.kind(), metric.master_condition()?);
    println!("  (f,g) = {}, (g,f) = {}", metric.derived_bracket(&f, &g)?, metric.derived_bracket(&g, &f)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(2);
    }
}
