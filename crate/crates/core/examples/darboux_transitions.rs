//! Symplectic changes of Darboux coordinates of the three basic kinds, their
//! compositions, and the identities that make the semidensity Laplacian
//! chart independent.

use oddsym::charts::{bv_identity, equivariance_check, laplacian_change_check, Density, Transition};
use oddsym::expr::parse;
use oddsym::scalar::Scalar;
use oddsym::superalgebra::{ChartId, SuperFunction};

pub fn run_example() -> oddsym::Result<()> {
    let (a, b, c) = (ChartId(0), ChartId(1), ChartId(2));
    let point = Transition::induced_point(vec![parse("x1 + x2^2")?.in_chart(b), parse("3*x2")?.in_chart(b)], a, b)?;
    // α = dφ with φ = ε₁x₁x₂
    let shift = Transition::one_form_shift(vec![parse("eps1*x2")?.in_chart(b), parse("eps1*x1")?.in_chart(b)], a, b)?;
    let flow = Transition::exponentiate_hamiltonian(2, &parse("x1*eps1*th1*th2")?.in_chart(b), &Scalar::from_int(1), a, b)?;
    let second = Transition::induced_point(vec![parse("2*x1")?.in_chart(c), parse("x2 - x1^2")?.in_chart(c)], b, c)?;
    let composite = flow.compose(&second)?;

    let s = Density::semidensity(parse("x1*th1 + x2^2*th1*th2 + 1")?);
    for (name, t) in [("induced point", &point), ("closed shift", &shift), ("hamiltonian flow", &flow), ("flow then point", &composite)] {
        println!("{name}:");
        for img in t.images() {
            println!("  {img}");
        }
        println!("  symplectic: {}", t.is_symplectomorphism()?.passed());
        println!("  Ber = {}", t.berezinian()?);
        println!("  Δ₀ √Ber = {}", bv_identity(t)?);
        println!("  equivariance: {}", equivariance_check(&s, t)?.holds());
        println!("  laplacian change: {}", laplacian_change_check(t, s.coefficient())?.holds());
    }

    let not_closed = Transition::one_form_shift(vec![parse("eps1*x2")?.in_chart(b), SuperFunction::zero().in_chart(b)], a, b)?;
    println!("shift by a non-closed form is symplectic: {}", not_closed.is_symplectomorphism()?.passed());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(2);
    }
}
