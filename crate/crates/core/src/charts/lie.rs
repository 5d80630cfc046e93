//! Divergences and Lie derivatives of densities, computed from coordinate
//! formulas and, for nilpotent odd Hamiltonians, from flows.

use num_rational::Rational64;

use crate::brackets::{hamiltonian_field, odd_bracket, VectorField};
use crate::error::{Error, Result};
use crate::laplacians::{delta0, VolumeForm};
use crate::scalar::{EvenVar, Scalar};
use crate::superalgebra::{ChartId, Parity, SuperFunction};

use super::density::{transform_density, Density};
use super::transition::Transition;

fn field_parity(x: &VectorField) -> Result<Parity> {
    let mut parity = None;
    for (c, v) in &x.components {
        if v.is_zero() {
            continue;
        }
        let p = v.parity_of()? + crate::brackets::coord_parity(*c);
        match parity {
            None => parity = Some(p),
            Some(q) if q != p => return Err(Error::ParityMismatch("inhomogeneous vector field".into())),
            _ => {}
        }
    }
    Ok(parity.unwrap_or(Parity::Even))
}

/// `div_ρ X = ρ⁻¹ Σ_b (-1)^{p(b)(p(X)+1)} ∂⃗_b(ρ X^b)` for a homogeneous field.
pub fn lie_divergence(rho: &VolumeForm, x: &VectorField) -> Result<SuperFunction> {
    let px = field_parity(x)?;
    let mut out = SuperFunction::zero().in_chart(rho.chart());
    for (c, v) in &x.components {
        let d = rho.coefficient().try_mul(v)?.partial(*c);
        let sign = if crate::brackets::coord_parity(*c) == Parity::Odd && px == Parity::Even { -1 } else { 1 };
        out = out.try_add(&d.scale_int(sign))?;
    }
    rho.coefficient().invert()?.try_mul(&out)
}

/// `L_X(s 𝒟^t) = (X s + t·div X·s) 𝒟^t` for a density in Darboux
/// coordinates and a homogeneous field `X`.
pub fn lie_derivative(x: &VectorField, d: &Density) -> Result<Density> {
    let s = d.coefficient();
    let div = lie_divergence(&VolumeForm::coordinate(s.chart()), x)?;
    let w = d.weight();
    let t = Scalar::from_ratio(*w.numer(), *w.denom());
    let coef = x.apply(s)?.try_add(&div.try_mul(s)?.scale(&t))?;
    Density::new(w, coef)
}

/// Both sides of `[Δ, f]s = (-1)^{p(f)} L_{D_f} s` on semidensities; for an
/// odd nilpotent `f` the Lie derivative is also read off the flow.
#[derive(Clone, Debug)]
pub struct CommutatorRelation {
    pub commutator: SuperFunction,
    pub lie: SuperFunction,
    pub flow: Option<SuperFunction>,
}

impl CommutatorRelation {
    pub fn holds(&self) -> bool {
        self.commutator == self.lie && self.flow.as_ref().is_none_or(|f| *f == self.commutator)
    }
}

pub fn commutator_relation(s: &Density, f: &SuperFunction) -> Result<CommutatorRelation> {
    if s.weight() != Rational64::new(1, 2) {
        return Err(Error::Precondition("the commutator relation is for semidensities".into()));
    }
    let sc = s.coefficient();
    let mut commutator = SuperFunction::zero().in_chart(sc.chart());
    let mut lie = commutator.clone();
    for (p, part) in f.homogeneous_parts() {
        let lhs = delta0(&part.try_mul(sc)?).try_sub(&part.try_mul(&delta0(sc))?.scale_int(p.sign()))?;
        commutator = commutator.try_add(&lhs)?;
        let l = lie_derivative(&hamiltonian_field(&part)?, s)?;
        lie = lie.try_add(&l.coefficient().scale_int(p.sign()))?;
    }
    let nilpotent = f.is_odd() && !f.is_zero() && f.min_odd_degree().is_some_and(|d| d >= 3);
    let flow = if nilpotent { Some(flow_derivative(f, s)?) } else { None };
    Ok(CommutatorRelation { commutator, lie, flow })
}

/// `d/dt|₀` of the semidensity `s` carried by the time-`t` flow of an odd
/// nilpotent Hamiltonian `q`, expressed back in the original chart.
pub fn flow_derivative(q: &SuperFunction, s: &Density) -> Result<SuperFunction> {
    let chart = s.chart();
    let n = q.darboux_indices().into_iter().chain(s.coefficient().darboux_indices()).max().unwrap_or(0);
    let t = EvenVar::Param(u32::MAX);
    let flow = Transition::exponentiate_hamiltonian(n, q, &Scalar::var(t), chart, ChartId(chart.0.wrapping_add(1)))?;
    let moved = transform_density(s, &flow)?;
    let d = moved.coefficient().partial_even(t);
    let at_zero = d.try_map_coefficients(|c| c.substitute(&|v| (v == t).then(Scalar::zero)))?;
    Ok(at_zero.in_chart(chart))
}

/// `δ_Q s = Δ₀Q·s - {Q, s}`.
pub fn delta_q(q: &SuperFunction, s: &Density) -> Result<Density> {
    let sc = s.coefficient();
    let coef = delta0(q).try_mul(sc)?.try_sub(&odd_bracket(q, sc)?)?;
    Density::new(s.weight(), coef)
}

/// Both sides of `Δ₀ δ_Q s = δ_Q Δ₀ s`.
#[derive(Clone, Debug)]
pub struct Commutation {
    pub lhs: SuperFunction,
    pub rhs: SuperFunction,
}

impl Commutation {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn commutation_check(q: &SuperFunction, s: &Density) -> Result<Commutation> {
    if !q.is_odd() {
        return Err(Error::ParityMismatch("δ_Q needs an odd Q".into()));
    }
    let lhs = delta0(delta_q(q, s)?.coefficient());
    let ds = Density::new(s.weight(), delta0(s.coefficient()))?;
    let rhs = delta_q(q, &ds)?.coefficient().clone();
    Ok(Commutation { lhs, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laplacians::divergence;

    fn x(i: u32) -> SuperFunction {
        SuperFunction::x(i)
    }
    fn th(i: u32) -> SuperFunction {
        SuperFunction::theta(i)
    }

    #[test]
    fn divergence_agrees_with_laplacian() {
        let rhos = [SuperFunction::one(), &x(1) * &x(1), &SuperFunction::one() + &(&th(1) * &th(2))];
        let fs = [&x(1) * &th(1), th(1), &(&x(1) * &x(2)) * &th(2), &x(2) * &(&th(1) * &th(2))];
        for r in &rhos {
            let rho = VolumeForm::new(r.clone()).unwrap();
            for f in &fs {
                let oracle = lie_divergence(&rho, &hamiltonian_field(f).unwrap()).unwrap();
                assert_eq!(oracle, divergence(&rho, f).unwrap(), "ρ={r}, f={f}");
            }
        }
        let rho = VolumeForm::coordinate(ChartId(0));
        assert_eq!(lie_divergence(&rho, &hamiltonian_field(&(&x(1) * &th(1))).unwrap()).unwrap(), SuperFunction::int(-2));
    }

    #[test]
    fn commutator_constant_and_product() {
        let s = Density::semidensity(SuperFunction::one());
        let r = commutator_relation(&s, &SuperFunction::int(3)).unwrap();
        assert!(r.commutator.is_zero() && r.holds());
        let r = commutator_relation(&s, &(&x(1) * &th(1))).unwrap();
        assert!(r.holds());
        assert_eq!(r.commutator, SuperFunction::one());
    }

    #[test]
    fn commutator_matches_flow() {
        let f = &(&SuperFunction::eps(1) * &th(1)) * &th(2);
        let s = Density::semidensity(&(&x(1) * &x(2)) + &(&x(2) * &th(1)));
        let r = commutator_relation(&s, &f).unwrap();
        assert!(r.flow.is_some());
        assert!(r.holds(), "{r:?}");
    }

    #[test]
    fn delta_q_example_commutes() {
        let q = &(&SuperFunction::eps(1) * &th(1)) * &th(2);
        let s = Density::semidensity(x(1));
        let dq = delta_q(&q, &s).unwrap();
        assert_eq!(*dq.coefficient(), -odd_bracket(&q, &x(1)).unwrap());
        assert!(commutation_check(&q, &s).unwrap().holds());
    }
}
