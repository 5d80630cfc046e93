//! Seeded samples of functions, volume forms and symplectic transitions.
//!
//! Coefficients are small integers in `[-3, 3]`, `x`-degree is at most 3.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::charts::Transition;
use crate::error::Result;
use crate::laplacians::VolumeForm;
use crate::scalar::Scalar;
use crate::superalgebra::{ChartId, OddGen, Parity, SuperFunction, ThetaMonomial};

pub const MAX_DEGREE: u32 = 3;

/// The three families of symplectic transitions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransitionKind {
    InducedPoint,
    ClosedShift,
    HamiltonianFlow,
}

impl TransitionKind {
    pub const ALL: [TransitionKind; 3] = [TransitionKind::InducedPoint, TransitionKind::ClosedShift, TransitionKind::HamiltonianFlow];
}

pub struct Sampler {
    rng: ChaCha8Rng,
    n: u32,
}

impl Sampler {
    pub fn new(seed: u64, n: u32) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), n: n.max(1) }
    }

    pub fn dim(&self) -> u32 {
        self.n
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn rng_range(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    /// A nonzero integer in `[-3, 3]`.
    pub fn coefficient(&mut self) -> i64 {
        let v = self.rng.gen_range(1..=3);
        if self.rng.gen_bool(0.5) {
            -v
        } else {
            v
        }
    }

    fn x_monomial(&mut self, max_deg: u32) -> SuperFunction {
        let deg = self.rng.gen_range(0..=max_deg);
        let mut m = SuperFunction::one();
        for _ in 0..deg {
            m = &m * &SuperFunction::x(self.rng.gen_range(1..=self.n));
        }
        m
    }

    fn theta_monomial(&mut self, parity: Option<Parity>) -> SuperFunction {
        loop {
            let mut m = SuperFunction::one();
            let mut len = 0;
            for i in 1..=self.n {
                if self.rng.gen_bool(0.5) {
                    m = &m * &SuperFunction::theta(i);
                    len += 1;
                }
            }
            if parity.is_none_or(|p| p == Parity::from_bit(len)) {
                return m;
            }
        }
    }

    /// A polynomial in `x` alone.
    pub fn x_polynomial(&mut self, terms: usize, max_deg: u32) -> SuperFunction {
        let mut f = SuperFunction::zero();
        for _ in 0..terms {
            let c = self.coefficient();
            f = &f + &self.x_monomial(max_deg).scale_int(c);
        }
        f
    }

    pub fn function(&mut self, terms: usize) -> SuperFunction {
        self.build(terms, None)
    }

    pub fn homogeneous(&mut self, parity: Parity, terms: usize) -> SuperFunction {
        self.build(terms, Some(parity))
    }

    /// A homogeneous function of random parity.
    pub fn any_homogeneous(&mut self, terms: usize) -> SuperFunction {
        let p = if self.rng.gen_bool(0.5) { Parity::Even } else { Parity::Odd };
        self.homogeneous(p, terms)
    }

    fn build(&mut self, terms: usize, parity: Option<Parity>) -> SuperFunction {
        let mut f = SuperFunction::zero();
        for _ in 0..terms {
            let c = self.coefficient();
            let t = self.theta_monomial(parity);
            f = &f + &(&self.x_monomial(MAX_DEGREE) * &t).scale_int(c);
        }
        f
    }

    /// An even nilpotent function: every term carries at least two `θ`.
    pub fn even_nilpotent(&mut self, terms: usize) -> SuperFunction {
        if self.n < 2 {
            return SuperFunction::zero();
        }
        let mut f = SuperFunction::zero();
        for _ in 0..terms {
            let t = loop {
                let t = self.theta_monomial(Some(Parity::Even));
                if !t.body().is_zero() {
                    continue;
                }
                break t;
            };
            let c = self.coefficient();
            f = &f + &(&self.x_monomial(2) * &t).scale_int(c);
        }
        f
    }

    /// `c + (x-polynomial)² + nilpotent`, cycling through constant,
    /// rational-body and nilpotent-perturbed families.
    pub fn volume_form(&mut self) -> Result<VolumeForm> {
        let c = self.rng.gen_range(1..=3) as i64;
        let body = match self.rng.gen_range(0..3) {
            0 => SuperFunction::ratio(c, self.rng.gen_range(1..=3)),
            1 => {
                let p = self.x_polynomial(1, 1);
                &SuperFunction::int(c) + &(&p * &p)
            }
            _ => {
                let x = SuperFunction::x(self.rng.gen_range(1..=self.n));
                let d = &SuperFunction::int(c) + &(&x * &x);
                d.invert()?
            }
        };
        let nil = self.even_nilpotent(1);
        VolumeForm::new(&body + &nil)
    }

    /// `(√ρ, ρ)` with `ρ` an exact square.
    pub fn square_volume_form(&mut self) -> Result<(SuperFunction, VolumeForm)> {
        let c = self.rng.gen_range(1..=3) as i64;
        let mut root = SuperFunction::int(c);
        if self.rng.gen_bool(0.5) {
            let x = SuperFunction::x(self.rng.gen_range(1..=self.n));
            root = &root + &(&x * &x);
        }
        root = &root + &self.even_nilpotent(2);
        let rho = VolumeForm::new(&root * &root)?;
        Ok((root, rho))
    }

    /// `x^i = a_i x′^i + b_i (x′^i)² + p_i(x′^{i+1}, …)`, with at least one
    /// nonlinear image.
    pub fn induced_point(&mut self, source: ChartId, target: ChartId) -> Result<Transition> {
        let n = self.n;
        let mut images = Vec::with_capacity(n as usize);
        let nonlinear = self.rng.gen_range(1..=n);
        for i in 1..=n {
            let x = SuperFunction::x(i);
            let a = self.coefficient();
            let mut img = x.scale_int(a);
            if i == nonlinear || self.rng.gen_bool(0.3) {
                let b = self.coefficient();
                img = &img + &(&x * &x).scale_int(b);
            }
            for j in i + 1..=n {
                if self.rng.gen_bool(0.5) {
                    let c = self.coefficient();
                    let xj = SuperFunction::x(j);
                    img = &img + &(&xj * &xj).scale_int(c);
                }
            }
            images.push(img.in_chart(target));
        }
        Ok(Transition::induced_point(images, source, target)?.with_name("induced point"))
    }

    /// `θ = θ′ − dφ` with `φ = ε₁·(x-polynomial)`.
    pub fn closed_shift(&mut self, source: ChartId, target: ChartId) -> Result<Transition> {
        let phi = &SuperFunction::eps(1) * &self.x_polynomial(2, 3);
        let alpha: Vec<SuperFunction> = (1..=self.n).map(|i| phi.partial_even(crate::scalar::EvenVar::X(i)).in_chart(target)).collect();
        Ok(Transition::one_form_shift(alpha, source, target)?.with_name("closed one-form shift"))
    }

    /// An odd Hamiltonian whose terms have odd degree at least 3, counting
    /// `θ` and two external parameters `ε₁, ε₂`.
    pub fn flow_hamiltonian(&mut self) -> SuperFunction {
        let mut gens: Vec<OddGen> = (1..=self.n).map(OddGen::theta).collect();
        gens.push(OddGen::eps(1));
        gens.push(OddGen::eps(2));
        let mut q = SuperFunction::zero();
        let terms = self.rng.gen_range(1..=2);
        for _ in 0..terms {
            let picked: Vec<OddGen> = gens.choose_multiple(&mut self.rng, 3).copied().collect();
            let Some((sign, m)) = ThetaMonomial::from_product(&picked) else {
                continue;
            };
            let c = self.coefficient() * i64::from(sign);
            let mono = SuperFunction::from_terms([(m, Scalar::from_int(c))]);
            q = &q + &(&self.x_monomial(2) * &mono);
        }
        if q.is_zero() {
            q = &SuperFunction::eps(1) * &(&SuperFunction::eps(2) * &SuperFunction::theta(1));
        }
        q
    }

    pub fn hamiltonian_flow(&mut self, source: ChartId, target: ChartId) -> Result<Transition> {
        let q = self.flow_hamiltonian().in_chart(target);
        let t = Scalar::from_int(self.rng.gen_range(1..=2));
        Ok(Transition::exponentiate_hamiltonian(self.n, &q, &t, source, target)?.with_name("hamiltonian flow"))
    }

    pub fn transition(&mut self, kind: TransitionKind, source: ChartId, target: ChartId) -> Result<Transition> {
        match kind {
            TransitionKind::InducedPoint => self.induced_point(source, target),
            TransitionKind::ClosedShift => self.closed_shift(source, target),
            TransitionKind::HamiltonianFlow => self.hamiltonian_flow(source, target),
        }
    }

    /// `count` symplectic transitions from chart 0: the three families in
    /// turn, every fourth one a composition of two.
    pub fn symplectic_transitions(&mut self, count: usize) -> Result<Vec<Transition>> {
        let (a, b, c) = (ChartId(0), ChartId(1), ChartId(2));
        let mut out = Vec::with_capacity(count);
        for k in 0..count {
            let kind = TransitionKind::ALL[k % 3];
            if k % 4 == 3 {
                let first = self.transition(kind, a, b)?;
                let second = self.transition(TransitionKind::ALL[(k + 1) % 3], b, c)?;
                let name = format!("{} then {}", first.name(), second.name());
                out.push(first.compose(&second)?.with_name(name));
            } else {
                out.push(self.transition(kind, a, b)?);
            }
        }
        Ok(out)
    }

    /// A form on `ℝ^n` with monomial coefficients of degree at most 2.
    pub fn form_function(&mut self, terms: usize) -> SuperFunction {
        let mut f = SuperFunction::zero();
        for _ in 0..terms {
            let mut m = SuperFunction::one();
            for i in 1..=self.n {
                if self.rng.gen_bool(0.5) {
                    m = &m * &SuperFunction::xi(i);
                }
            }
            let c = self.coefficient();
            f = &f + &(&self.x_monomial(2) * &m).scale_int(c);
        }
        f
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let mut a = Sampler::new(7, 2);
        let mut b = Sampler::new(7, 2);
        for _ in 0..10 {
            assert_eq!(a.function(3), b.function(3));
        }
        let mut c = Sampler::new(8, 2);
        assert!((0..10).any(|_| a.function(3) != c.function(3)));
    }

    #[test]
    fn parities_and_bounds() {
        let mut s = Sampler::new(1, 3);
        for _ in 0..50 {
            assert!(s.homogeneous(Parity::Odd, 3).is_odd() || s.homogeneous(Parity::Odd, 3).is_zero());
            let f = s.function(4);
            for (_, c) in f.terms() {
                assert!(c.numer().total_degree() <= MAX_DEGREE);
            }
            let q = s.flow_hamiltonian();
            assert!(q.is_odd());
            assert!(q.min_odd_degree().unwrap() >= 3);
        }
    }

    #[test]
    fn transitions_are_symplectic() {
        let mut s = Sampler::new(3, 2);
        for t in s.symplectic_transitions(8).unwrap() {
            assert!(t.is_symplectomorphism().unwrap().passed(), "{}", t.name());
        }
    }
}
