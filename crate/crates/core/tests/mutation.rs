//! Deliberately broken brackets must be caught by the suites, under the
//! right identity tags.

use oddsym::brackets::{odd_bracket, Bracket, FnBracket, OddPoisson};
use oddsym::superalgebra::{Parity, SuperFunction};
use oddsym::suite::{run_suite_with, SuiteConfig, SuiteName, SuiteReport};
use oddsym::Result;

fn run(name: SuiteName, bracket: &dyn Bracket) -> SuiteReport {
    let cfg = SuiteConfig { bracket, ..SuiteConfig::new(2, 7, 10) };
    run_suite_with(name, &cfg).unwrap()
}

fn sign_flipped(f: &SuperFunction, g: &SuperFunction) -> Result<SuperFunction> {
    let b = odd_bracket(f, g)?;
    Ok(if f.is_even() && g.is_odd() { -b } else { b })
}

fn doubled(f: &SuperFunction, g: &SuperFunction) -> Result<SuperFunction> {
    Ok(odd_bracket(f, g)?.scale_int(2))
}

fn even_parity(f: &SuperFunction, g: &SuperFunction) -> Result<SuperFunction> {
    odd_bracket(f, g)
}

#[test]
fn control_passes() {
    for name in [SuiteName::Axioms, SuiteName::Laplacian, SuiteName::Master] {
        let r = run(name, &OddPoisson);
        assert!(r.passed(), "{r}");
    }
}

#[test]
fn sign_flip_breaks_antisymmetry() {
    let broken = FnBracket { epsilon: Parity::Odd, f: sign_flipped };
    let r = run(SuiteName::Axioms, &broken);
    let failing = r.failing_tags();
    assert!(failing.contains(&"graded antisymmetry"), "{r}");
    assert!(!failing.contains(&"bracket parity"), "{r}");
    let first = r.check("graded antisymmetry").unwrap().first_failure.as_deref().unwrap();
    assert!(first.contains("antisymmetry"), "{first}");
    let r = run(SuiteName::Laplacian, &broken);
    assert!(r.failing_tags().contains(&"laplacian generates the bracket"), "{r}");
}

#[test]
fn rescaled_bracket_passes_axioms_but_not_the_laplacian() {
    let broken = FnBracket { epsilon: Parity::Odd, f: doubled };
    assert!(run(SuiteName::Axioms, &broken).passed());
    let r = run(SuiteName::Laplacian, &broken);
    let failing = r.failing_tags();
    assert!(failing.contains(&"laplacian generates the bracket"), "{r}");
    assert!(failing.contains(&"square of the laplacian is hamiltonian"), "{r}");
    assert!(!failing.contains(&"laplacian squares to zero"), "{r}");
    let r = run(SuiteName::Master, &broken);
    assert!(r.failing_tags().contains(&"quantum master equation from the exponential"), "{r}");
}

#[test]
fn wrong_parity_label_is_caught() {
    let broken = FnBracket { epsilon: Parity::Even, f: even_parity };
    let r = run(SuiteName::Axioms, &broken);
    assert!(r.failing_tags().contains(&"bracket parity"), "{r}");
}
