//! Odd and even Poisson brackets, Hamiltonian vector fields, the Poisson
//! axioms and derived brackets generated by fiber-quadratic Hamiltonians.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{EvenVar, Scalar};
use crate::superalgebra::{ChartId, Coord, OddGen, OddKind, Parity, SuperFunction};

/// A bilinear bracket of fixed parity `ε`.
pub trait Bracket {
    fn epsilon(&self) -> Parity;
    fn bracket(&self, f: &SuperFunction, g: &SuperFunction) -> Result<SuperFunction>;
}

/// The canonical odd bracket on `ℝ^{n|n}` in Darboux coordinates `(x^i, θ_i)`:
///
/// `{f,g} = Σ_i ∂f/∂x^i ∂g/∂θ_i + (-1)^{p(f)} ∂f/∂θ_i ∂g/∂x^i`,
/// applied to the parity-homogeneous parts of `f` and extended bilinearly.
pub fn odd_bracket(f: &SuperFunction, g: &SuperFunction) -> Result<SuperFunction> {
    if f.chart() != g.chart() {
        return Err(Error::ChartMismatch(f.chart().0, g.chart().0));
    }
    let mut idx = f.darboux_indices();
    idx.retain(|i| g.darboux_indices().contains(i));
    let mut out = SuperFunction::zero().in_chart(f.chart());
    if idx.is_empty() {
        return Ok(out);
    }
    for (p, part) in f.homogeneous_parts() {
        for &i in &idx {
            let x = EvenVar::X(i);
            let th = OddGen::theta(i);
            let t1 = part.partial_even(x).try_mul(&g.partial_gen(th))?;
            let t2 = part.partial_gen(th).try_mul(&g.partial_even(x))?;
            out = out.try_add(&t1)?;
            out = if p == Parity::Odd { out.try_sub(&t2)? } else { out.try_add(&t2)? };
        }
    }
    Ok(out)
}

/// The canonical odd bracket of Darboux coordinates as a [`Bracket`].
#[derive(Clone, Copy, Debug, Default)]
pub struct OddPoisson;

impl Bracket for OddPoisson {
    fn epsilon(&self) -> Parity {
        Parity::Odd
    }
    fn bracket(&self, f: &SuperFunction, g: &SuperFunction) -> Result<SuperFunction> {
        odd_bracket(f, g)
    }
}

/// A phase space carrying a canonical symplectic structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PhaseSpace {
    /// `ℝ^{n|n}` with the odd Darboux structure.
    OddDarboux(u32),
    /// `T*M` with its canonical even structure; `base` lists the coordinates of `M`.
    Cotangent(Vec<Coord>),
    /// `ΠT*M` with its canonical odd structure.
    ParityCotangent(Vec<Coord>),
}

impl PhaseSpace {
    /// Parity of the canonical bracket.
    pub fn epsilon(&self) -> Parity {
        match self {
            PhaseSpace::Cotangent(_) => Parity::Even,
            _ => Parity::Odd,
        }
    }

    pub fn base(&self) -> Vec<Coord> {
        match self {
            PhaseSpace::OddDarboux(n) => (1..=*n).map(Coord::x).chain((1..=*n).map(Coord::theta)).collect(),
            PhaseSpace::Cotangent(b) | PhaseSpace::ParityCotangent(b) => b.clone(),
        }
    }

    /// Fiber coordinate conjugate to the `k`-th (1-based) base coordinate.
    pub fn fiber(&self, k: usize) -> Result<Coord> {
        let base = self.base();
        let c = *base.get(k.wrapping_sub(1)).ok_or(Error::UnknownIndex(k))?;
        let parity = match self {
            PhaseSpace::OddDarboux(_) => return Err(Error::KindMismatch("Darboux space has no fibers".into())),
            PhaseSpace::Cotangent(_) => coord_parity(c),
            PhaseSpace::ParityCotangent(_) => coord_parity(c).flip(),
        };
        Ok(match parity {
            Parity::Even => Coord::Even(EvenVar::Fiber(k as u32)),
            Parity::Odd => Coord::Odd(OddGen::fiber(k as u32)),
        })
    }

    pub fn fiber_function(&self, k: usize) -> Result<SuperFunction> {
        Ok(SuperFunction::coord(self.fiber(k)?))
    }

    /// The canonical structure as a bracket table.
    pub fn table(&self) -> TableBracket {
        let eps = self.epsilon();
        let mut entries = Vec::new();
        match self {
            PhaseSpace::OddDarboux(n) => {
                for i in 1..=*n {
                    entries.push((Coord::x(i), Coord::theta(i), SuperFunction::one()));
                    entries.push((Coord::theta(i), Coord::x(i), -SuperFunction::one()));
                }
            }
            PhaseSpace::Cotangent(b) | PhaseSpace::ParityCotangent(b) => {
                for k in 1..=b.len() {
                    let z = b[k - 1];
                    let p = self.fiber(k).expect("fiber exists");
                    // {z, p} = 1 and graded antisymmetry for {p, z}
                    let s = -(coord_parity(z) + eps).koszul(coord_parity(p) + eps);
                    entries.push((z, p, SuperFunction::one()));
                    entries.push((p, z, SuperFunction::int(s)));
                }
            }
        }
        TableBracket { epsilon: eps, entries }
    }
}

pub fn coord_parity(c: Coord) -> Parity {
    if c.is_odd() {
        Parity::Odd
    } else {
        Parity::Even
    }
}

/// A bracket `{f,g} = Σ (f ∂⃖/∂z^a) ω^{ab} (∂⃗/∂z^b g)` given by its table of
/// (possibly coordinate-dependent) structure functions `ω^{ab}`.
#[derive(Clone, Debug)]
pub struct TableBracket {
    pub epsilon: Parity,
    pub entries: Vec<(Coord, Coord, SuperFunction)>,
}

impl TableBracket {
    /// Hamiltonian vector field of `f`: components `X^b = {f, z^b}`.
    pub fn hamiltonian_field(&self, f: &SuperFunction) -> Result<VectorField> {
        let mut comps: Vec<(Coord, SuperFunction)> = Vec::new();
        for (a, b, w) in &self.entries {
            let fa = f.partial_right(*a);
            if fa.is_zero() {
                continue;
            }
            let term = fa.try_mul(&w.clone().in_chart(f.chart()))?;
            match comps.iter_mut().find(|(c, _)| c == b) {
                Some((_, v)) => *v = v.try_add(&term)?,
                None => comps.push((*b, term)),
            }
        }
        comps.retain(|(_, v)| !v.is_zero());
        Ok(VectorField { chart: f.chart(), components: comps })
    }
}

impl Bracket for TableBracket {
    fn epsilon(&self) -> Parity {
        self.epsilon
    }
    fn bracket(&self, f: &SuperFunction, g: &SuperFunction) -> Result<SuperFunction> {
        if f.chart() != g.chart() {
            return Err(Error::ChartMismatch(f.chart().0, g.chart().0));
        }
        self.hamiltonian_field(f)?.apply(g)
    }
}

/// A bracket given by a closure; used to build deliberately broken fixtures.
pub struct FnBracket<F> {
    pub epsilon: Parity,
    pub f: F,
}

impl<F> Bracket for FnBracket<F>
where
    F: Fn(&SuperFunction, &SuperFunction) -> Result<SuperFunction>,
{
    fn epsilon(&self) -> Parity {
        self.epsilon
    }
    fn bracket(&self, f: &SuperFunction, g: &SuperFunction) -> Result<SuperFunction> {
        (self.f)(f, g)
    }
}

impl<B: Bracket + ?Sized> Bracket for &B {
    fn epsilon(&self) -> Parity {
        (**self).epsilon()
    }
    fn bracket(&self, f: &SuperFunction, g: &SuperFunction) -> Result<SuperFunction> {
        (**self).bracket(f, g)
    }
}

/// A first-order operator `X = Σ X^b ∂⃗/∂z^b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    pub chart: ChartId,
    pub components: Vec<(Coord, SuperFunction)>,
}

impl VectorField {
    pub fn zero(chart: ChartId) -> Self {
        VectorField { chart, components: Vec::new() }
    }

    pub fn component(&self, c: Coord) -> SuperFunction {
        self.components
            .iter()
            .find(|(k, _)| *k == c)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(|| SuperFunction::zero().in_chart(self.chart))
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|(_, v)| v.is_zero())
    }

    pub fn apply(&self, g: &SuperFunction) -> Result<SuperFunction> {
        let mut out = SuperFunction::zero().in_chart(g.chart());
        for (c, v) in &self.components {
            let dg = g.partial(*c);
            if !dg.is_zero() {
                out = out.try_add(&v.try_mul(&dg)?)?;
            }
        }
        Ok(out)
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "0");
        }
        for (k, (c, v)) in self.components.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({v})*D[{c}]")?;
        }
        Ok(())
    }
}

/// Hamiltonian vector field of `f` for the odd Darboux bracket:
/// `D_f = Σ ∂f/∂x^i ∂/∂θ_i + (-1)^{p(f)} ∂f/∂θ_i ∂/∂x^i`.
pub fn hamiltonian_field(f: &SuperFunction) -> Result<VectorField> {
    let n = f.darboux_indices().into_iter().max().unwrap_or(0);
    PhaseSpace::OddDarboux(n).table().hamiltonian_field(f)
}

/// `D_f g` for the canonical bracket of `space`.
pub fn hamiltonian_apply(f: &SuperFunction, g: &SuperFunction, space: &PhaseSpace) -> Result<SuperFunction> {
    match space {
        PhaseSpace::OddDarboux(_) => odd_bracket(f, g),
        _ => space.table().bracket(f, g),
    }
}

/// Canonical even bracket `{,}₀` on `T*M`.
pub fn even_bracket(base: &[Coord], f: &SuperFunction, g: &SuperFunction) -> Result<SuperFunction> {
    PhaseSpace::Cotangent(base.to_vec()).table().bracket(f, g)
}

/// Canonical odd bracket `{,}₁` on `ΠT*M`.
pub fn odd_fiber_bracket(base: &[Coord], f: &SuperFunction, g: &SuperFunction) -> Result<SuperFunction> {
    PhaseSpace::ParityCotangent(base.to_vec()).table().bracket(f, g)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    Parity,
    Antisymmetry,
    Leibniz,
    Jacobi,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Parity => "parity",
            Axiom::Antisymmetry => "antisymmetry",
            Axiom::Leibniz => "leibniz",
            Axiom::Jacobi => "jacobi",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Debug)]
pub struct Violation {
    pub axiom: Axiom,
    pub args: Vec<SuperFunction>,
    pub residual: SuperFunction,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails on (", self.axiom)?;
        for (k, a) in self.args.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "): residual {}", self.residual)
    }
}

#[derive(Clone, Debug, Default)]
pub struct AxiomReport {
    pub pairs: usize,
    pub triples: usize,
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn failed(&self, axiom: Axiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }
}

/// Checks the parity rule, graded antisymmetry, the Leibniz rule and the
/// graded Jacobi identity on all pairs and triples of (the parity-homogeneous
/// parts of) `samples`.
pub fn check_axioms<B: Bracket + ?Sized>(br: &B, samples: &[SuperFunction]) -> Result<AxiomReport> {
    let eps = br.epsilon();
    let hom: Vec<(Parity, SuperFunction)> = samples
        .iter()
        .flat_map(|s| s.homogeneous_parts())
        .collect();
    let n = hom.len();
    let mut report = AxiomReport::default();
    let mut table: Vec<Vec<SuperFunction>> = Vec::with_capacity(n);
    for (_, f) in &hom {
        let mut row = Vec::with_capacity(n);
        for (_, g) in &hom {
            row.push(br.bracket(f, g)?);
        }
        table.push(row);
    }
    for a in 0..n {
        for b in 0..n {
            report.pairs += 1;
            let (pf, f) = &hom[a];
            let (pg, g) = &hom[b];
            let fg = &table[a][b];
            let expected = *pf + *pg + eps;
            if !fg.is_zero() && fg.parity() != Some(expected) {
                report.violations.push(Violation { axiom: Axiom::Parity, args: vec![f.clone(), g.clone()], residual: fg.clone() });
            }
            // {f,g} + (-1)^{(p(f)+ε)(p(g)+ε)} {g,f} = 0
            let s = (*pf + eps).koszul(*pg + eps);
            let res = fg.try_add(&table[b][a].scale_int(s))?;
            if !res.is_zero() {
                report.violations.push(Violation { axiom: Axiom::Antisymmetry, args: vec![f.clone(), g.clone()], residual: res });
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                report.triples += 1;
                let (pf, f) = &hom[a];
                let (pg, g) = &hom[b];
                let (ph, h) = &hom[c];
                // {f,gh} = {f,g}h + (-1)^{p(g)p(h)} {f,h} g
                let lhs = br.bracket(f, &g.try_mul(h)?)?;
                let rhs = table[a][b]
                    .try_mul(h)?
                    .try_add(&table[a][c].try_mul(g)?.scale_int(pg.koszul(*ph)))?;
                let res = lhs.try_sub(&rhs)?;
                if !res.is_zero() {
                    report.violations.push(Violation { axiom: Axiom::Leibniz, args: vec![f.clone(), g.clone(), h.clone()], residual: res });
                }
                // Σ_cyc (-1)^{(p(f)+ε)(p(h)+ε)} {f,{g,h}} = 0
                let j1 = br.bracket(f, &table[b][c])?.scale_int((*pf + eps).koszul(*ph + eps));
                let j2 = br.bracket(g, &table[c][a])?.scale_int((*pg + eps).koszul(*pf + eps));
                let j3 = br.bracket(h, &table[a][b])?.scale_int((*ph + eps).koszul(*pg + eps));
                let res = j1.try_add(&j2)?.try_add(&j3)?;
                if !res.is_zero() {
                    report.violations.push(Violation { axiom: Axiom::Jacobi, args: vec![f.clone(), g.clone(), h.clone()], residual: res });
                }
            }
        }
    }
    Ok(report)
}

/// Parity-homogeneous Jacobi residual `Σ_cyc (-1)^{(p(f)+ε)(p(h)+ε)} {f,{g,h}}`.
pub fn jacobi_residual<B: Bracket + ?Sized>(br: &B, f: &SuperFunction, g: &SuperFunction, h: &SuperFunction) -> Result<SuperFunction> {
    let eps = br.epsilon();
    let (pf, pg, ph) = (f.parity_of()?, g.parity_of()?, h.parity_of()?);
    let j1 = br.bracket(f, &br.bracket(g, h)?)?.scale_int((pf + eps).koszul(ph + eps));
    let j2 = br.bracket(g, &br.bracket(h, f)?)?.scale_int((pg + eps).koszul(pf + eps));
    let j3 = br.bracket(h, &br.bracket(f, g)?)?.scale_int((ph + eps).koszul(pg + eps));
    j1.try_add(&j2)?.try_add(&j3)
}

/// Which structure a fiber-quadratic Hamiltonian induces on the base.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MasterKind {
    /// Odd on `T*M` or even on `ΠT*M`: a Poisson structure, subject to `{𝔖,𝔖} = 0`.
    Poisson,
    /// Even on `T*M` or odd on `ΠT*M`: a symmetric (metric) form, no condition.
    Metric,
}

/// A Hamiltonian on `T*M` or `ΠT*M` of fiber degree exactly two.
#[derive(Clone, Debug)]
pub struct MasterHamiltonian {
    space: PhaseSpace,
    s: SuperFunction,
    parity: Parity,
}

impl MasterHamiltonian {
    pub fn new(space: PhaseSpace, s: SuperFunction) -> Result<Self> {
        if matches!(space, PhaseSpace::OddDarboux(_)) {
            return Err(Error::KindMismatch("master Hamiltonians live on T*M or ΠT*M".into()));
        }
        let parity = s.parity_of()?;
        for (m, c) in s.terms() {
            if c.denom().vars().iter().any(|v| matches!(v, EvenVar::Fiber(_))) {
                return Err(Error::Precondition("fiber variables in a denominator".into()));
            }
            let odd = m.count_kind(OddKind::Fiber);
            for (mono, _) in c.numer().terms() {
                let even: u32 = mono
                    .pairs()
                    .iter()
                    .filter(|(v, _)| matches!(v, EvenVar::Fiber(_)))
                    .map(|(_, e)| *e)
                    .sum();
                if odd as u32 + even != 2 {
                    return Err(Error::Precondition(format!("term {m} is not quadratic in the fibers")));
                }
            }
        }
        Ok(MasterHamiltonian { space, s, parity })
    }

    /// `𝔖 = Σ 𝔖^{AB} p_A p_B` from its coefficient list `(A, B, 𝔖^{AB})`.
    pub fn from_components(space: PhaseSpace, comps: &[(usize, usize, SuperFunction)]) -> Result<Self> {
        let mut s = SuperFunction::zero();
        for (a, b, c) in comps {
            let pa = space.fiber_function(*a)?;
            let pb = space.fiber_function(*b)?;
            s = &s + &(&(c * &pa) * &pb);
        }
        Self::new(space, s)
    }

    pub fn space(&self) -> &PhaseSpace {
        &self.space
    }

    pub fn function(&self) -> &SuperFunction {
        &self.s
    }

    pub fn kind(&self) -> MasterKind {
        match (&self.space, self.parity) {
            (PhaseSpace::Cotangent(_), Parity::Odd) | (PhaseSpace::ParityCotangent(_), Parity::Even) => MasterKind::Poisson,
            _ => MasterKind::Metric,
        }
    }

    /// `{𝔖,𝔖}_ε` in the ambient canonical bracket.
    pub fn master_condition(&self) -> Result<SuperFunction> {
        self.space.table().bracket(&self.s, &self.s)
    }

    /// `{f,{𝔖,g}_ε}_ε` with fiber coordinates then set to zero.
    pub fn derived_bracket(&self, f: &SuperFunction, g: &SuperFunction) -> Result<SuperFunction> {
        let table = self.space.table();
        let sg = table.bracket(&self.s, g)?;
        Ok(restrict_to_base(&table.bracket(f, &sg)?))
    }

    /// The derived bracket as a [`Bracket`] of parity `p(𝔖)`.
    pub fn as_bracket(&self) -> DerivedBracket<'_> {
        DerivedBracket(self)
    }
}

pub struct DerivedBracket<'a>(&'a MasterHamiltonian);

impl Bracket for DerivedBracket<'_> {
    fn epsilon(&self) -> Parity {
        self.0.parity
    }
    fn bracket(&self, f: &SuperFunction, g: &SuperFunction) -> Result<SuperFunction> {
        self.0.derived_bracket(f, g)
    }
}

/// Sets all fiber coordinates to zero.
pub fn restrict_to_base(f: &SuperFunction) -> SuperFunction {
    let dropped = f.drop_kind(OddKind::Fiber);
    let fibers: BTreeSet<EvenVar> = dropped.even_vars().into_iter().filter(|v| matches!(v, EvenVar::Fiber(_))).collect();
    if fibers.is_empty() {
        return dropped;
    }
    dropped
        .try_map_coefficients(|c| c.substitute(&|v| fibers.contains(&v).then(Scalar::zero)))
        .expect("fiber variables never occur in denominators")
}
