//! Batch verification of the identities on seeded random samples.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::brackets::{check_axioms, hamiltonian_field, Axiom, Bracket, OddPoisson};
use crate::charts::{
    bv_identity, canonical_delta, commutator_relation, equivariance_check, is_normal, laplacian_change_check, lie_divergence,
    transform_density, Density, Transition,
};
use crate::error::{Error, Result};
use crate::formsbridge::{commutation_square, divergence_correspondence, form_to_semidensity, hodge, inverse_hodge, semidensity_to_form, BaseDensity, DifferentialForm};
use crate::laplacians::{cocycle_check, delta0, delta_change, delta_rho, divergence, square_hamiltonian, VolumeForm};
use crate::master::{classical_master_check, exp_identity_literal, exp_identity_residual, semidensity_master_check, MasterAction};
use crate::random::Sampler;
use crate::scalar::Scalar;
use crate::superalgebra::{ChartId, Parity, SuperFunction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteName {
    Axioms,
    Laplacian,
    Bv,
    Fourier,
    Master,
    All,
}

impl SuiteName {
    pub const PARTS: [SuiteName; 5] = [SuiteName::Axioms, SuiteName::Laplacian, SuiteName::Bv, SuiteName::Fourier, SuiteName::Master];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteName::Axioms => "axioms",
            SuiteName::Laplacian => "laplacian",
            SuiteName::Bv => "bv",
            SuiteName::Fourier => "fourier",
            SuiteName::Master => "master",
            SuiteName::All => "all",
        }
    }
}

impl FromStr for SuiteName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "axioms" => SuiteName::Axioms,
            "laplacian" => SuiteName::Laplacian,
            "bv" => SuiteName::Bv,
            "fourier" => SuiteName::Fourier,
            "master" => SuiteName::Master,
            "all" => SuiteName::All,
            other => return Err(Error::UnknownSuite(other.to_string())),
        })
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Tally of one identity over all of its samples.
#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub suite: SuiteName,
    pub tag: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: SuiteName,
    pub n: u32,
    pub seed: u64,
    pub count: usize,
    pub checks: Vec<CheckOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }

    pub fn failing_tags(&self) -> Vec<&'static str> {
        self.checks.iter().filter(|c| !c.passed()).map(|c| c.tag).collect()
    }

    pub fn check(&self, tag: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.tag == tag)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {} n={} seed={} count={}", self.suite, self.n, self.seed, self.count)?;
        for c in &self.checks {
            let status = if c.passed() { "PASS" } else { "FAIL" };
            write!(f, "{status} [{}] {} ({} cases", c.suite, c.tag, c.cases)?;
            if c.failures > 0 {
                write!(f, ", {} failing", c.failures)?;
            }
            writeln!(f, ")")?;
            if let Some(first) = &c.first_failure {
                writeln!(f, "     first failure: {first}")?;
            }
        }
        let failing = self.checks.iter().filter(|c| !c.passed()).count();
        write!(f, "{} ({} identities, {} failing)", if failing == 0 { "pass" } else { "FAIL" }, self.checks.len(), failing)
    }
}

/// Run parameters. `bracket` is used wherever an identity involves the odd
/// bracket explicitly, so a deliberately broken bracket shows up in the tags.
pub struct SuiteConfig<'a> {
    pub n: u32,
    pub seed: u64,
    pub count: usize,
    pub bracket: &'a dyn Bracket,
}

impl SuiteConfig<'static> {
    pub fn new(n: u32, seed: u64, count: usize) -> Self {
        SuiteConfig { n, seed, count, bracket: &OddPoisson }
    }
}

pub fn run_suite(name: &str, n: u32, seed: u64, count: usize) -> Result<SuiteReport> {
    run_suite_with(name.parse()?, &SuiteConfig::new(n, seed, count))
}

pub fn run_suite_with(name: SuiteName, cfg: &SuiteConfig<'_>) -> Result<SuiteReport> {
    if !(1..=3).contains(&cfg.n) {
        return Err(Error::Precondition(format!("suite dimension n = {} outside 1..=3", cfg.n)));
    }
    let parts: Vec<SuiteName> = if name == SuiteName::All { SuiteName::PARTS.to_vec() } else { vec![name] };
    let mut checks = Vec::new();
    for part in parts {
        let mut run = Run { cfg, suite: part, checks: Vec::new() };
        let mut sampler = Sampler::new(cfg.seed.wrapping_mul(31).wrapping_add(part as u64), cfg.n);
        match part {
            SuiteName::Axioms => run.axioms(&mut sampler),
            SuiteName::Laplacian => run.laplacian(&mut sampler)?,
            SuiteName::Bv => run.bv(&mut sampler)?,
            SuiteName::Fourier => run.fourier(&mut sampler)?,
            SuiteName::Master => run.master(&mut sampler)?,
            SuiteName::All => unreachable!(),
        }
        checks.extend(run.checks);
    }
    Ok(SuiteReport { suite: name, n: cfg.n, seed: cfg.seed, count: cfg.count, checks })
}

struct Run<'c, 'a> {
    cfg: &'c SuiteConfig<'a>,
    suite: SuiteName,
    checks: Vec<CheckOutcome>,
}

impl Run<'_, '_> {
    fn slot(&mut self, tag: &'static str) -> &mut CheckOutcome {
        let pos = match self.checks.iter().position(|c| c.tag == tag) {
            Some(p) => p,
            None => {
                self.checks.push(CheckOutcome { suite: self.suite, tag, cases: 0, failures: 0, first_failure: None });
                self.checks.len() - 1
            }
        };
        &mut self.checks[pos]
    }

    /// Records one case; `detail` describes the sample on failure.
    fn record(&mut self, tag: &'static str, outcome: Result<bool>, detail: impl FnOnce() -> String) {
        let slot = self.slot(tag);
        slot.cases += 1;
        let failure = match outcome {
            Ok(true) => None,
            Ok(false) => Some(detail()),
            Err(e) => Some(format!("{} ({e})", detail())),
        };
        if let Some(msg) = failure {
            slot.failures += 1;
            slot.first_failure.get_or_insert(msg);
        }
    }

    fn br(&self, f: &SuperFunction, g: &SuperFunction) -> Result<SuperFunction> {
        self.cfg.bracket.bracket(f, g)
    }

    fn axioms(&mut self, s: &mut Sampler) {
        const TAGS: [(Axiom, &str); 4] = [
            (Axiom::Parity, "bracket parity"),
            (Axiom::Antisymmetry, "graded antisymmetry"),
            (Axiom::Leibniz, "bracket leibniz rule"),
            (Axiom::Jacobi, "graded jacobi identity"),
        ];
        for _ in 0..self.cfg.count {
            let triple = [s.any_homogeneous(2), s.any_homogeneous(2), s.any_homogeneous(2)];
            let report = check_axioms(self.cfg.bracket, &triple);
            for (axiom, tag) in TAGS {
                let outcome = report.as_ref().map(|r| !r.failed(axiom)).map_err(Clone::clone);
                let first = report.as_ref().ok().and_then(|r| r.violations.iter().find(|v| v.axiom == axiom)).map(ToString::to_string);
                self.record(tag, outcome, || first.unwrap_or_else(|| format!("{}, {}, {}", triple[0], triple[1], triple[2])));
            }
        }
    }

    fn volume_forms(&self, s: &mut Sampler) -> Result<Vec<VolumeForm>> {
        let mut out = vec![VolumeForm::coordinate(ChartId::default())];
        while out.len() < 5 {
            out.push(s.volume_form()?);
        }
        Ok(out)
    }

    fn laplacian(&mut self, s: &mut Sampler) -> Result<()> {
        let rhos = self.volume_forms(s)?;
        for k in 0..self.cfg.count {
            let rho = &rhos[k % rhos.len()];
            let f = s.function(3);
            self.record("laplacian squares to zero", Ok(delta0(&delta0(&f)).is_zero()), || f.to_string());
            let sd = Density::semidensity(s.function(3));
            let twice = canonical_delta(&sd).and_then(|d| canonical_delta(&d)).map(|d| d.coefficient().is_zero());
            self.record("semidensity laplacian squares to zero", twice, || sd.to_string());

            let f = s.any_homogeneous(2);
            let g = s.any_homogeneous(2);
            let ctx = || format!("rho = {}, f = {f}, g = {g}", rho.coefficient());
            self.record("laplacian generates the bracket", self.leibniz(rho, &f, &g), ctx);
            self.record("laplacian preserves the bracket", self.preservation(rho, &f, &g), ctx);
            let other = s.volume_form()?;
            let change = VolumeForm::new(rho.coefficient() * other.coefficient())
                .and_then(|rho2| delta_change(rho, &rho2, &f))
                .map(|c| c.holds());
            self.record("change of volume form", change, ctx);
            let lie = hamiltonian_field(&f)
                .and_then(|x| lie_divergence(rho, &x))
                .and_then(|l| Ok(l == divergence(rho, &f)?));
            self.record("divergence of hamiltonian fields", lie, ctx);

            let (root, rho2) = s.square_volume_form()?;
            let scaled = VolumeForm::new(rho.coefficient() * &(&root * &root));
            let cocycle = scaled.and_then(|r2| cocycle_check(rho, &r2, &f)).map(|c| c.holds());
            self.record("cocycle relation", cocycle, || format!("rho = {}, g = ({root})^2, f = {f}", rho.coefficient()));
            let square = square_hamiltonian(&rho2)
                .and_then(|h| Ok(delta_rho(&rho2, &delta_rho(&rho2, &f)?)? == self.br(&h, &f)?));
            self.record("square of the laplacian is hamiltonian", square, || format!("sqrt rho = {root}, f = {f}"));
        }
        Ok(())
    }

    /// `Δ_ρ(fg) = Δ_ρf·g + (-1)^{p(f)}{f,g} + (-1)^{p(f)} f Δ_ρg`.
    fn leibniz(&self, rho: &VolumeForm, f: &SuperFunction, g: &SuperFunction) -> Result<bool> {
        let sign = f.parity_of()?.sign();
        let lhs = delta_rho(rho, &f.try_mul(g)?)?;
        let rhs = delta_rho(rho, f)?
            .try_mul(g)?
            .try_add(&self.br(f, g)?.scale_int(sign))?
            .try_add(&f.try_mul(&delta_rho(rho, g)?)?.scale_int(sign))?;
        Ok(lhs == rhs)
    }

    /// `Δ_ρ{f,g} = {Δ_ρf, g} + (-1)^{p(f)+1}{f, Δ_ρg}`.
    fn preservation(&self, rho: &VolumeForm, f: &SuperFunction, g: &SuperFunction) -> Result<bool> {
        let sign = -f.parity_of()?.sign();
        let lhs = delta_rho(rho, &self.br(f, g)?)?;
        let rhs = self.br(&delta_rho(rho, f)?, g)?.try_add(&self.br(f, &delta_rho(rho, g)?)?.scale_int(sign))?;
        Ok(lhs == rhs)
    }

    fn bv(&mut self, s: &mut Sampler) -> Result<()> {
        let (a, b) = (ChartId(0), ChartId(1));
        let scaling = Transition::new(
            "scaling",
            a,
            b,
            vec![SuperFunction::x(1).scale_int(2).in_chart(b), SuperFunction::theta(1).scale_ratio(1, 2).in_chart(b)],
        )?;
        let four = scaling.berezinian().map(|j| j == SuperFunction::int(4).in_chart(b));
        self.record("scaling berezinian equals 4", four, || "x1 -> 2 x1, th1 -> th1/2".into());
        let volume = transform_density(&Density::volume(SuperFunction::one()), &scaling).map(|d| d.coefficient().body() == Scalar::from_int(4));
        self.record("scaling berezinian equals 4", volume, || "coordinate volume form".into());

        let transitions = s.symplectic_transitions(self.cfg.count)?;
        for t in &transitions {
            let ctx = || format!("{}:\n{t}", t.name());
            let sym = t.is_symplectomorphism().map(|r| r.passed());
            self.record("transition preserves the bracket", sym, ctx);
            self.record("batalin-vilkovisky identity", bv_identity(t).map(|v| v.is_zero()), ctx);
            let sd = Density::semidensity(s.function(2));
            let eq = equivariance_check(&sd, t).map(|c| c.holds());
            self.record("equivariance of the semidensity laplacian", eq, || format!("s = {sd}, {}", ctx()));
            let change = laplacian_change_check(t, sd.coefficient()).map(|c| c.holds());
            self.record("laplacian under a change of darboux coordinates", change, || format!("f = {}, {}", sd.coefficient(), ctx()));
        }
        for _ in 0..self.cfg.count {
            let sd = Density::semidensity(s.function(2));
            let f = s.any_homogeneous(2);
            let rel = commutator_relation(&sd, &f).map(|r| r.holds());
            self.record("commutator with multiplication is a lie derivative", rel, || format!("s = {sd}, f = {f}"));
        }
        Ok(())
    }

    fn fourier(&mut self, s: &mut Sampler) -> Result<()> {
        let n = self.cfg.n;
        for _ in 0..self.cfg.count {
            let omega = DifferentialForm::new(n, s.form_function(3))?;
            let round = form_to_semidensity(&omega).and_then(|sd| semidensity_to_form(n, &sd)).map(|w| w == omega);
            self.record("forms to semidensities round trip", round, || omega.to_string());
            let square = commutation_square(&omega).map(|(l, r)| l == r);
            self.record("de rham differential is the canonical laplacian", square, || omega.to_string());

            let f = s.function(2);
            let c = s.rng_range(1, 3);
            let sigma = BaseDensity::new(&SuperFunction::int(c) + &(&SuperFunction::x(1) * &SuperFunction::x(1)))?;
            let back = hodge(n, &f, &sigma).and_then(|w| inverse_hodge(&w, &sigma)).map(|g| g == f);
            self.record("hodge transform round trip", back, || format!("f = {f}, sigma = {sigma}"));
            let t = s.function(2);
            let div = divergence_correspondence(&t, &sigma).map(|r| r.holds());
            self.record("laplacian of a multivector is its divergence", div, || format!("T = {t}, sigma = {sigma}"));
        }
        Ok(())
    }

    fn master(&mut self, s: &mut Sampler) -> Result<()> {
        for _ in 0..self.cfg.count {
            let g = s.even_nilpotent(2);
            let lit = exp_identity_literal(&g).map(|(l, r)| l == r);
            self.record("exponential identity", lit, || g.to_string());

            let action = s.homogeneous(Parity::Even, 2);
            let quantum = self.quantum_from_exponential(&action);
            self.record("quantum master equation from the exponential", quantum, || action.to_string());
            let classical = MasterAction::new(action.clone()).and_then(|a| classical_master_check(&a)).map(|c| c.consistent());
            self.record("classical limit of the quantum master equation", classical, || action.to_string());

            let r = Density::semidensity(s.homogeneous(Parity::Odd, 2));
            let sd = Density::semidensity(delta0(r.coefficient()));
            let closed = semidensity_master_check(&sd, Some(&r)).map(|m| m.closed() && m.exact == Some(true));
            self.record("exact semidensities are closed", closed, || format!("r = {r}"));

            let (root, rho) = s.square_volume_form()?;
            let chain = self.chain(&rho);
            self.record("normal implies closed implies nilpotent", chain, || format!("sqrt rho = {root}"));
            let closed_root = &SuperFunction::int(s.rng_range(1, 3)) + &delta0(&s.homogeneous(Parity::Odd, 2));
            if !closed_root.body().is_zero() {
                let chain = VolumeForm::new(&closed_root * &closed_root).and_then(|rho| {
                    let report = is_normal(&rho, &[])?;
                    Ok(report.delta_sqrt_vanishes == Some(true) && report.delta_squared_vanishes)
                });
                self.record("closed square roots give nilpotent laplacians", chain, || format!("sqrt rho = {closed_root}"));
            }
        }
        Ok(())
    }

    /// `-8ħ²(Δ₀g + ½{g,g})` at `g = iS/2ħ` against `-4iħΔ₀S + {S,S}`.
    fn quantum_from_exponential(&self, action: &SuperFunction) -> Result<bool> {
        let hbar = Scalar::hbar();
        let g = action.scale(&(&Scalar::i() / &(&hbar * &Scalar::from_int(2))));
        let lhs = exp_identity_residual(&g)?.scale(&(&hbar * &hbar)).scale_int(-8);
        let rhs = delta0(action).scale(&(&Scalar::i() * &hbar)).scale_int(-4).try_add(&self.br(action, action)?)?;
        Ok(lhs == rhs)
    }

    /// Each stage of `normal ⇒ Δ√ρ = 0 ⇒ Δ_ρ² = 0` that holds implies the next.
    fn chain(&self, rho: &VolumeForm) -> Result<bool> {
        let flat = Transition::identity(self.cfg.n, rho.chart(), ChartId(rho.chart().0 + 1));
        let report = is_normal(rho, &[flat])?;
        let closed = report.delta_sqrt_vanishes == Some(true);
        Ok((!report.normal() || closed) && (!closed || report.delta_squared_vanishes))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names() {
        assert_eq!("bv".parse::<SuiteName>().unwrap(), SuiteName::Bv);
        assert_eq!("nope".parse::<SuiteName>(), Err(Error::UnknownSuite("nope".into())));
        assert!(run_suite("axioms", 4, 0, 1).is_err());
    }

    #[test]
    fn small_run_passes_and_is_deterministic() {
        let a = run_suite("all", 2, 3, 3).unwrap();
        assert!(a.passed(), "{a}");
        let b = run_suite("all", 2, 3, 3).unwrap();
        assert_eq!(a.to_string(), b.to_string());
    }

    #[test]
    fn bv_lists_scaling_example() {
        let r = run_suite("bv", 1, 0, 2).unwrap();
        let c = r.check("scaling berezinian equals 4").unwrap();
        assert!(c.passed() && c.cases == 2);
    }
}
