#[path = "../examples/odd_bracket.rs"]
mod odd_bracket;

#[path = "../examples/derived_bracket.rs"]
mod derived_bracket;

#[path = "../examples/odd_laplacians.rs"]
mod odd_laplacians;

#[path = "../examples/berezinian_scaling.rs"]
mod berezinian_scaling;

#[path = "../examples/darboux_transitions.rs"]
mod darboux_transitions;

#[path = "../examples/forms_fourier.rs"]
mod forms_fourier;

#[path = "../examples/lagrangian_restriction.rs"]
mod lagrangian_restriction;

#[path = "../examples/master_equations.rs"]
mod master_equations;

#[path = "../examples/commutator_lie.rs"]
mod commutator_lie;

#[path = "../examples/verification_suite.rs"]
mod verification_suite;

#[path = "../examples/expressions.rs"]
mod expressions;

#[test]
fn odd_bracket_example_runs() {
    odd_bracket::run_example().expect("odd bracket example should run");
}

#[test]
fn derived_bracket_example_runs() {
    derived_bracket::run_example().expect("derived bracket example should run");
}

#[test]
fn odd_laplacians_example_runs() {
    odd_laplacians::run_example().expect("odd laplacians example should run");
}

#[test]
fn berezinian_scaling_example_runs() {
    berezinian_scaling::run_example().expect("berezinian scaling example should run");
}

#[test]
fn darboux_transitions_example_runs() {
    darboux_transitions::run_example().expect("darboux transitions example should run");
}

#[test]
fn forms_fourier_example_runs() {
    forms_fourier::run_example().expect("forms fourier example should run");
}

#[test]
fn lagrangian_restriction_example_runs() {
    lagrangian_restriction::run_example().expect("lagrangian restriction example should run");
}

#[test]
fn master_equations_example_runs() {
    master_equations::run_example().expect("master equations example should run");
}

#[test]
fn commutator_lie_example_runs() {
    commutator_lie::run_example().expect("commutator lie example should run");
}

#[test]
fn verification_suite_example_runs() {
    verification_suite::run_example().expect("verification suite example should run");
}

#[test]
fn expressions_example_runs() {
    expressions::run_example().expect("expressions example should run");
}
