//! Odd Laplacians on functions: `Δ₀`, `Δ_ρ`, divergences of Hamiltonian
//! fields and the behaviour of `Δ_ρ` and `Δ_ρ²` under a change of volume form.

use crate::brackets::{odd_bracket, PhaseSpace, VectorField};
use crate::error::{Error, Result};
use crate::scalar::EvenVar;
use crate::superalgebra::{ChartId, Coord, OddGen, Parity, SuperFunction};

/// `Δ₀f = Σ_i ∂²f/∂x^i∂θ_i`.
pub fn delta0(f: &SuperFunction) -> SuperFunction {
    let mut out = SuperFunction::zero().in_chart(f.chart());
    for g in f.odd_generators() {
        if g.kind != crate::superalgebra::OddKind::Theta {
            continue;
        }
        let d = f.partial_gen(g).partial_even(EvenVar::X(g.index));
        out = &out + &d;
    }
    out
}

/// The coordinate coefficient `ρ` of a volume form `ρ(x,θ)𝒟(x,θ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VolumeForm {
    rho: SuperFunction,
}

impl VolumeForm {
    pub fn new(rho: SuperFunction) -> Result<Self> {
        if !rho.is_even() {
            return Err(Error::ParityMismatch("a volume form coefficient must be even".into()));
        }
        if rho.body().is_zero() {
            return Err(Error::NotInvertible("volume form with zero body".into()));
        }
        Ok(VolumeForm { rho })
    }

    /// The coordinate volume form of a chart.
    pub fn coordinate(chart: ChartId) -> Self {
        VolumeForm { rho: SuperFunction::one().in_chart(chart) }
    }

    pub fn coefficient(&self) -> &SuperFunction {
        &self.rho
    }

    pub fn chart(&self) -> ChartId {
        self.rho.chart()
    }

    /// `g · ρ`.
    pub fn rescale(&self, g: &SuperFunction) -> Result<Self> {
        Self::new(self.rho.try_mul(g)?)
    }

    /// `g = ρ′/ρ`.
    pub fn ratio_to(&self, other: &VolumeForm) -> Result<SuperFunction> {
        other.rho.try_mul(&self.rho.invert()?)
    }

    pub fn sqrt(&self) -> Result<SuperFunction> {
        self.rho.sqrt_even()
    }

    /// `D_{log ρ}`, whose components are built from `ρ⁻¹∂ρ`.
    pub fn log_field(&self) -> Result<VectorField> {
        log_field(&self.rho)
    }
}

/// Hamiltonian vector field of `log g` for even invertible `g`, computed
/// from the logarithmic derivatives `∂(log g) = g⁻¹∂g` without forming a log.
pub fn log_field(g: &SuperFunction) -> Result<VectorField> {
    let inv = g.invert()?;
    let mut comps = Vec::new();
    for i in g.darboux_indices() {
        let dx = inv.try_mul(&g.partial_even(EvenVar::X(i)))?;
        let dth = inv.try_mul(&g.partial_gen(OddGen::theta(i)))?;
        // D_L = ∂L/∂x ∂_θ + ∂L/∂θ ∂_x for even L
        if !dx.is_zero() {
            comps.push((Coord::theta(i), dx));
        }
        if !dth.is_zero() {
            comps.push((Coord::x(i), dth));
        }
    }
    Ok(VectorField { chart: g.chart(), components: comps })
}

/// `{f, log g}` evaluated from the odd bracket formula with `f` in the first
/// slot; independent of [`log_field`].
pub fn bracket_with_log(f: &SuperFunction, g: &SuperFunction) -> Result<SuperFunction> {
    let inv = g.invert()?;
    let mut out = SuperFunction::zero().in_chart(f.chart());
    let mut idx = f.darboux_indices();
    idx.extend(g.darboux_indices());
    for (p, part) in f.homogeneous_parts() {
        for &i in &idx {
            let x = EvenVar::X(i);
            let th = OddGen::theta(i);
            let l_th = inv.try_mul(&g.partial_gen(th))?;
            let l_x = inv.try_mul(&g.partial_even(x))?;
            out = out.try_add(&part.partial_even(x).try_mul(&l_th)?)?;
            let t = part.partial_gen(th).try_mul(&l_x)?;
            out = if p == Parity::Odd { out.try_sub(&t)? } else { out.try_add(&t)? };
        }
    }
    Ok(out)
}

/// `Δ_ρ f = Δ₀f + ½{log ρ, f}`.
pub fn delta_rho(rho: &VolumeForm, f: &SuperFunction) -> Result<SuperFunction> {
    if rho.chart() != f.chart() {
        return Err(Error::ChartMismatch(rho.chart().0, f.chart().0));
    }
    let d0 = delta0(f);
    if rho.rho.is_one() {
        return Ok(d0);
    }
    let half = rho.log_field()?.apply(f)?.scale_ratio(1, 2);
    d0.try_add(&half)
}

/// `div_ρ D_f = 2(-1)^{p(f)} Δ_ρ f` for parity-homogeneous `f`.
pub fn divergence(rho: &VolumeForm, f: &SuperFunction) -> Result<SuperFunction> {
    let p = f.parity_of()?;
    Ok(delta_rho(rho, f)?.scale_int(2 * p.sign()))
}

/// Outcome of comparing `Δ_{ρ′}f - Δ_ρf` with `½(-1)^{p(f)}{f, log g}`.
#[derive(Clone, Debug)]
pub struct DeltaChange {
    pub difference: SuperFunction,
    pub expected: SuperFunction,
}

impl DeltaChange {
    pub fn holds(&self) -> bool {
        self.difference == self.expected
    }
}

pub fn delta_change(rho: &VolumeForm, rho2: &VolumeForm, f: &SuperFunction) -> Result<DeltaChange> {
    let difference = delta_rho(rho2, f)?.try_sub(&delta_rho(rho, f)?)?;
    let g = rho.ratio_to(rho2)?;
    let mut expected = SuperFunction::zero().in_chart(f.chart());
    for (p, part) in f.homogeneous_parts() {
        let b = bracket_with_log(&part, &g)?.scale_ratio(p.sign(), 2);
        expected = expected.try_add(&b)?;
    }
    Ok(DeltaChange { difference, expected })
}

/// `Δ_ρ(Δ_ρ f)`.
pub fn delta_rho_squared(rho: &VolumeForm, f: &SuperFunction) -> Result<SuperFunction> {
    delta_rho(rho, &delta_rho(rho, f)?)
}

/// `H(ρ′,ρ) = (1/√g) Δ_ρ √g` with `g = ρ′/ρ`.
pub fn modular_hamiltonian(rho: &VolumeForm, rho2: &VolumeForm) -> Result<SuperFunction> {
    let g = rho.ratio_to(rho2)?;
    let root = g.sqrt_even()?;
    root.invert()?.try_mul(&delta_rho(rho, &root)?)
}

/// Both sides of `Δ²_{ρ′}f - Δ²_ρf = {H(ρ′,ρ), f}`.
#[derive(Clone, Debug)]
pub struct CocycleCheck {
    pub hamiltonian: SuperFunction,
    pub lhs: SuperFunction,
    pub rhs: SuperFunction,
}

impl CocycleCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn cocycle_check(rho: &VolumeForm, rho2: &VolumeForm, f: &SuperFunction) -> Result<CocycleCheck> {
    let hamiltonian = modular_hamiltonian(rho, rho2)?;
    let lhs = delta_rho_squared(rho2, f)?.try_sub(&delta_rho_squared(rho, f)?)?;
    let rhs = odd_bracket(&hamiltonian, f)?;
    Ok(CocycleCheck { hamiltonian, lhs, rhs })
}

/// `Δ√ρ/√ρ`, whose Hamiltonian field is `Δ_ρ²` when `ρ` has an exact square root.
pub fn square_hamiltonian(rho: &VolumeForm) -> Result<SuperFunction> {
    let root = rho.sqrt()?;
    root.invert()?.try_mul(&delta0(&root))
}

/// The modular vector field of a volume form on `T*M` with its canonical even
/// bracket: `f ↦ ½(-1)^{p(f)} div_ρ D_f = ½(-1)^{p(f)}{f, log ρ}₀ = -½ D_{log ρ} f`.
pub fn even_modular_field(base: &[Coord], rho: &VolumeForm) -> Result<VectorField> {
    let space = PhaseSpace::Cotangent(base.to_vec());
    let table = space.table();
    let inv = rho.rho.invert()?;
    let mut comps: Vec<(Coord, SuperFunction)> = Vec::new();
    for (a, b, w) in &table.entries {
        // (log ρ)∂⃖_a = ρ⁻¹ (ρ∂⃖_a)
        let d = rho.rho.partial_right(*a);
        if d.is_zero() {
            continue;
        }
        let term = d.try_mul(&inv)?.try_mul(&w.clone().in_chart(rho.chart()))?.scale_ratio(-1, 2);
        match comps.iter_mut().find(|(c, _)| c == b) {
            Some((_, v)) => *v = v.try_add(&term)?,
            None => comps.push((*b, term)),
        }
    }
    comps.retain(|(_, v)| !v.is_zero());
    Ok(VectorField { chart: rho.chart(), components: comps })
}
