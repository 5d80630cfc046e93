//! Densities of rational weight, the canonical Laplacian on semidensities
//! and its behaviour under Darboux transitions.

use std::fmt;

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::laplacians::{delta0, delta_rho, log_field, VolumeForm};
use crate::superalgebra::{ChartId, SuperFunction};

use super::transition::{coordinates, Transition};

/// `s(x,θ) 𝒟(x,θ)^t` in a Darboux chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Density {
    weight: Rational64,
    coefficient: SuperFunction,
}

impl Density {
    pub fn new(weight: Rational64, coefficient: SuperFunction) -> Result<Self> {
        if *weight.denom() > 2 {
            return Err(Error::Unsupported(format!("weight {weight}: only integer and half-integer weights")));
        }
        Ok(Density { weight, coefficient })
    }

    pub fn semidensity(coefficient: SuperFunction) -> Self {
        Density { weight: Rational64::new(1, 2), coefficient }
    }

    pub fn volume(coefficient: SuperFunction) -> Self {
        Density { weight: Rational64::from_integer(1), coefficient }
    }

    pub fn weight(&self) -> Rational64 {
        self.weight
    }

    pub fn coefficient(&self) -> &SuperFunction {
        &self.coefficient
    }

    pub fn chart(&self) -> ChartId {
        self.coefficient.chart()
    }

    pub fn is_semidensity(&self) -> bool {
        self.weight == Rational64::new(1, 2)
    }
}

impl fmt::Display for Density {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) D^{}", self.coefficient, self.weight)
    }
}

/// `J^t` for even invertible `J` and `t` integer or half-integer.
pub fn berezinian_power(j: &SuperFunction, t: Rational64) -> Result<SuperFunction> {
    let base = match *t.denom() {
        1 => j.clone(),
        2 => j.sqrt_even()?,
        _ => return Err(Error::Unsupported(format!("weight {t}"))),
    };
    let e = t.numer().unsigned_abs() as u32;
    let p = base.pow(e);
    if *t.numer() < 0 {
        p.invert()
    } else {
        Ok(p)
    }
}

/// `s′ = s(z(z′)) · Ber(∂z/∂z′)^t`.
pub fn transform_density(d: &Density, t: &Transition) -> Result<Density> {
    let moved = t.pullback(&d.coefficient)?;
    if *d.weight.numer() == 0 {
        return Density::new(d.weight, moved);
    }
    let j = berezinian_power(&t.berezinian()?, d.weight)?;
    Density::new(d.weight, moved.try_mul(&j)?)
}

/// `Δ(s√𝒟) = (Δ₀s)√𝒟` in the chart of `s`.
pub fn canonical_delta(s: &Density) -> Result<Density> {
    if !s.is_semidensity() {
        return Err(Error::Precondition("the canonical Laplacian acts on weight ½".into()));
    }
    Ok(Density::semidensity(delta0(&s.coefficient)))
}

/// Two computations expected to agree exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub lhs: SuperFunction,
    pub rhs: SuperFunction,
}

impl Comparison {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Transform-then-`Δ` against `Δ`-then-transform.
pub fn equivariance_check(s: &Density, t: &Transition) -> Result<Comparison> {
    let lhs = transform_density(&canonical_delta(s)?, t)?.coefficient;
    let rhs = canonical_delta(&transform_density(s, t)?)?.coefficient;
    Ok(Comparison { lhs, rhs })
}

/// `Δ₀′ (Ber ∂z/∂z′)^{1/2}` in the new chart, which vanishes for symplectic
/// transitions.
pub fn bv_identity(t: &Transition) -> Result<SuperFunction> {
    let report = t.is_symplectomorphism()?;
    if !report.passed() {
        return Err(Error::Precondition(format!("transition is not symplectic:\n{report}")));
    }
    Ok(delta0(&t.berezinian()?.sqrt_even()?))
}

/// `Δ₀f` pulled back against `Δ₀′f′ + ½{log Ber(∂z/∂z′), f′}`.
pub fn laplacian_change_check(t: &Transition, f: &SuperFunction) -> Result<Comparison> {
    let lhs = t.pullback(&delta0(f))?;
    let moved = t.pullback(f)?;
    let half = log_field(&t.berezinian()?)?.apply(&moved)?.scale_ratio(1, 2);
    let rhs = delta0(&moved).try_add(&half)?;
    Ok(Comparison { lhs, rhs })
}

/// `Δ(f√ρ)` against `(Δ_ρ f)√ρ + (-1)^{p(f)} f Δ√ρ`.
pub fn product_rule_check(rho: &VolumeForm, f: &SuperFunction) -> Result<Comparison> {
    let root = rho.sqrt()?;
    let lhs = delta0(&f.try_mul(&root)?);
    let mut rhs = delta_rho(rho, f)?.try_mul(&root)?;
    for (p, part) in f.homogeneous_parts() {
        rhs = rhs.try_add(&part.try_mul(&delta0(&root))?.scale_int(p.sign()))?;
    }
    Ok(Comparison { lhs, rhs })
}

#[derive(Clone, Debug)]
pub struct NormalityReport {
    /// Per candidate: its name and whether `ρ` becomes the coordinate form.
    pub candidates: Vec<(String, bool)>,
    /// `Δ√ρ = 0`; `None` when `ρ` has no exact square root.
    pub delta_sqrt_vanishes: Option<bool>,
    /// `Δ_ρ² = 0` on the coordinate functions.
    pub delta_squared_vanishes: bool,
}

impl NormalityReport {
    pub fn normal(&self) -> bool {
        self.candidates.iter().any(|(_, ok)| *ok)
    }
}

impl fmt::Display for NormalityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, ok) in &self.candidates {
            writeln!(f, "{name}: {}", if *ok { "normal" } else { "not normal" })?;
        }
        match self.delta_sqrt_vanishes {
            Some(v) => writeln!(f, "Δ√ρ = 0: {v}")?,
            None => writeln!(f, "Δ√ρ = 0: undecided (no exact square root)")?,
        }
        write!(f, "Δ_ρ² = 0: {}", self.delta_squared_vanishes)
    }
}

/// Normality of `ρ` relative to the supplied candidate transitions.
pub fn is_normal(rho: &VolumeForm, candidates: &[Transition]) -> Result<NormalityReport> {
    let vol = Density::volume(rho.coefficient().clone());
    let mut results = Vec::with_capacity(candidates.len());
    for t in candidates {
        let moved = transform_density(&vol, t)?;
        results.push((t.name().to_string(), moved.coefficient.is_one()));
    }
    let delta_sqrt_vanishes = match rho.sqrt() {
        Ok(root) => Some(delta0(&root).is_zero()),
        Err(Error::NoExactSquareRoot(_)) => None,
        Err(e) => return Err(e),
    };
    let mut n = rho.coefficient().darboux_indices().into_iter().max().unwrap_or(0);
    n = n.max(candidates.iter().map(Transition::dim).max().unwrap_or(0));
    let mut delta_squared_vanishes = true;
    for c in coordinates(n.max(1)) {
        let f = SuperFunction::coord(c).in_chart(rho.chart());
        if !delta_rho(rho, &delta_rho(rho, &f)?)?.is_zero() {
            delta_squared_vanishes = false;
        }
    }
    Ok(NormalityReport { candidates: results, delta_sqrt_vanishes, delta_squared_vanishes })
}
