//! Master equations on functions and on semidensities.

use std::fmt;

use crate::brackets::odd_bracket;
use crate::charts::{coordinates, Density};
use crate::error::{Error, Result};
use crate::formsbridge::semidensity_to_form;
use crate::laplacians::{delta0, delta_rho, VolumeForm};
use crate::scalar::{EvenVar, Scalar};
use crate::superalgebra::{OddKind, SuperFunction};

/// An even master action `S`, possibly depending on the formal parameter `ħ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MasterAction {
    s: SuperFunction,
}

impl MasterAction {
    pub fn new(s: SuperFunction) -> Result<Self> {
        if !s.is_even() {
            return Err(Error::ParityMismatch("a master action is even".into()));
        }
        Ok(MasterAction { s })
    }

    pub fn function(&self) -> &SuperFunction {
        &self.s
    }
}

/// `Δ₀g + ½{g,g}`, the factor in `Δ₀ exp g = (Δ₀g + ½{g,g}) exp g`.
pub fn exp_identity_residual(g: &SuperFunction) -> Result<SuperFunction> {
    if !g.is_even() {
        return Err(Error::ParityMismatch("the exponential identity needs an even g".into()));
    }
    delta0(g).try_add(&odd_bracket(g, g)?.scale_ratio(1, 2))
}

/// For `g` with zero body: `Δ₀(exp g)` and `residual · exp g`, expanded.
pub fn exp_identity_literal(g: &SuperFunction) -> Result<(SuperFunction, SuperFunction)> {
    let e = g.exp_nilpotent()?;
    Ok((delta0(&e), exp_identity_residual(g)?.try_mul(&e)?))
}

/// `-4ħΔ₀S + {S,S}`.
pub fn quantum_master_residual(s: &MasterAction) -> Result<SuperFunction> {
    let hbar = SuperFunction::hbar().in_chart(s.s.chart());
    let quantum = hbar.try_mul(&delta0(&s.s))?.scale_int(-4);
    quantum.try_add(&odd_bracket(&s.s, &s.s)?)
}

/// Coefficients of `ħ^0, ħ^1, …` of a function polynomial in `ħ`.
pub fn hbar_coefficients(f: &SuperFunction) -> Result<Vec<SuperFunction>> {
    for (_, c) in f.terms() {
        if c.denom().vars().contains(&EvenVar::Hbar) {
            return Err(Error::Unsupported("ħ in a denominator".into()));
        }
    }
    let mut out = Vec::new();
    let mut d = f.clone();
    let mut fact = Scalar::one();
    let mut k = 0i64;
    while !d.is_zero() {
        let at_zero = d.try_map_coefficients(|c| c.substitute(&|v| (v == EvenVar::Hbar).then(Scalar::zero)))?;
        out.push(at_zero.scale(&fact.inv()?));
        k += 1;
        fact = &fact * &Scalar::from_int(k);
        d = d.partial_even(EvenVar::Hbar);
    }
    Ok(out)
}

/// `{S,S}` next to the `ħ → 0` limit of the quantum residual.
#[derive(Clone, Debug)]
pub struct ClassicalCheck {
    pub bracket: SuperFunction,
    pub limit: SuperFunction,
}

impl ClassicalCheck {
    pub fn satisfied(&self) -> bool {
        self.bracket.is_zero()
    }

    /// The limit agrees with `{S,S}` taken at `ħ = 0`.
    pub fn consistent(&self) -> bool {
        hbar_coefficients(&self.bracket)
            .map(|c| c.into_iter().next().unwrap_or_else(|| SuperFunction::zero().in_chart(self.bracket.chart())))
            .is_ok_and(|b0| b0 == self.limit)
    }
}

pub fn classical_master_check(s: &MasterAction) -> Result<ClassicalCheck> {
    let bracket = odd_bracket(&s.s, &s.s)?;
    let residual = quantum_master_residual(s)?;
    let limit = hbar_coefficients(&residual)?
        .into_iter()
        .next()
        .unwrap_or_else(|| SuperFunction::zero().in_chart(s.s.chart()));
    Ok(ClassicalCheck { bracket, limit })
}

#[derive(Clone, Debug)]
pub struct SemidensityMaster {
    pub delta: SuperFunction,
    /// Whether `s = Δr` for the supplied `r`.
    pub exact: Option<bool>,
}

impl SemidensityMaster {
    pub fn closed(&self) -> bool {
        self.delta.is_zero()
    }
}

pub fn semidensity_master_check(s: &Density, r: Option<&Density>) -> Result<SemidensityMaster> {
    if !s.is_semidensity() || r.is_some_and(|r| !r.is_semidensity()) {
        return Err(Error::Precondition("expected semidensities".into()));
    }
    let delta = delta0(s.coefficient());
    let exact = r.map(|r| delta0(r.coefficient()) == *s.coefficient());
    Ok(SemidensityMaster { delta, exact })
}

#[derive(Clone, Debug)]
pub struct NuReport {
    /// `Δ√ρ/√ρ`, a constant built from external odd parameters.
    pub nu: SuperFunction,
    /// Degree-0 coefficient of the form of `√ρ` when `ν = 0`.
    pub form_constant: Option<SuperFunction>,
}

impl NuReport {
    pub fn closed(&self) -> bool {
        self.nu.is_zero()
    }
}

impl fmt::Display for NuReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Δ_ρ² = 0: true")?;
        writeln!(f, "nu = {}", self.nu)?;
        write!(f, "Δ√ρ = 0: {}", self.closed())?;
        if let Some(c) = &self.form_constant {
            write!(f, "\ndegree-0 form coefficient (chart-level) = {c}")?;
        }
        Ok(())
    }
}

/// `ν = Δ√ρ/√ρ` for `ρ` on `ℝ^{n|n}` with `Δ_ρ² = 0`.
pub fn nu_constant(n: u32, rho: &VolumeForm) -> Result<NuReport> {
    let root = rho.sqrt()?;
    for c in coordinates(n) {
        let f = SuperFunction::coord(c).in_chart(rho.chart());
        let sq = delta_rho(rho, &delta_rho(rho, &f)?)?;
        if !sq.is_zero() {
            let h = root.invert()?.try_mul(&delta0(&root))?;
            return Err(Error::Precondition(format!("Δ_ρ² ≠ 0 (Δ_ρ²{c} = {sq}); Δ√ρ/√ρ = {h} is a nonconstant Hamiltonian")));
        }
    }
    let nu = root.invert()?.try_mul(&delta0(&root))?;
    let constant = nu.odd_generators().iter().all(|g| g.kind == OddKind::Eps)
        && nu.terms().all(|(_, c)| !c.vars().iter().any(|v| matches!(v, EvenVar::X(_))));
    if !constant {
        return Err(Error::Precondition(format!("Δ√ρ/√ρ = {nu} is not constant")));
    }
    let form_constant = if nu.is_zero() {
        let form = semidensity_to_form(n, &Density::semidensity(root))?;
        Some(form.degree_part(0).function().clone())
    } else {
        None
    };
    Ok(NuReport { nu, form_constant })
}
