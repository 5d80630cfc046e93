//! Changes of Darboux coordinates.

use std::fmt;

use crate::brackets::{hamiltonian_field, odd_bracket};
use crate::error::{Error, Result};
use crate::scalar::{EvenVar, Scalar};
use crate::superalgebra::{ChartId, Coord, OddKind, Substitution, SuperFunction};

use super::supermatrix::{inverse_even, SuperMatrix};

/// A change of coordinates on `ℝ^{n|n}`: the old coordinates
/// `(x^1..x^n, θ_1..θ_n)` of chart `source` as functions of the new
/// coordinates of chart `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transition {
    name: String,
    source: ChartId,
    target: ChartId,
    n: u32,
    images: Vec<SuperFunction>,
}

impl Transition {
    pub fn new(name: impl Into<String>, source: ChartId, target: ChartId, images: Vec<SuperFunction>) -> Result<Self> {
        if !images.len().is_multiple_of(2) {
            return Err(Error::Precondition("a Darboux transition needs 2n images".into()));
        }
        let n = (images.len() / 2) as u32;
        let images: Vec<SuperFunction> = images.into_iter().map(|f| f.in_chart(target)).collect();
        for (k, f) in images.iter().enumerate() {
            let ok = if k < n as usize { f.is_even() } else { f.is_odd() };
            if !ok {
                return Err(Error::ParityMismatch(format!("image {} has the wrong parity", k + 1)));
            }
            if f.darboux_indices().iter().any(|&i| i > n) {
                return Err(Error::UnknownIndex(*f.darboux_indices().iter().next_back().unwrap() as usize));
            }
        }
        for f in images.iter().take(n as usize) {
            if f.body().is_zero() && n > 0 {
                return Err(Error::Precondition("even image with zero body".into()));
            }
        }
        Ok(Transition { name: name.into(), source, target, n, images })
    }

    pub fn identity(n: u32, source: ChartId, target: ChartId) -> Self {
        let images = coordinates(n).into_iter().map(|c| SuperFunction::coord(c).in_chart(target)).collect();
        Transition { name: "identity".into(), source, target, n, images }
    }

    /// The scaling `x¹′ = 2x¹, θ₁′ = θ₁/2`,
    /// stored as `x¹ = x¹′/2, θ₁ = 2θ₁′`.
    pub fn scaling(n: u32, source: ChartId, target: ChartId) -> Self {
        let mut t = Self::identity(n, source, target);
        t.images[0] = SuperFunction::x(1).scale_ratio(1, 2).in_chart(target);
        t.images[n as usize] = SuperFunction::theta(1).scale_int(2).in_chart(target);
        t.name = "scaling".into();
        t
    }

    /// Transformation induced by a change `x = x(x′)` of the base:
    /// `θ_i = (∂x^{j′}/∂x^i) θ_{j′}`.
    pub fn induced_point(x_images: Vec<SuperFunction>, source: ChartId, target: ChartId) -> Result<Self> {
        let n = x_images.len();
        let x_images: Vec<SuperFunction> = x_images.into_iter().map(|f| f.in_chart(target)).collect();
        for f in &x_images {
            if !f.odd_generators().iter().all(|g| g.kind == OddKind::Eps) || !f.is_even() {
                return Err(Error::Precondition("base change must not involve θ".into()));
            }
        }
        // J[i][j] = ∂x^i/∂x^{j′}
        let jac: Vec<Vec<SuperFunction>> = x_images
            .iter()
            .map(|f| (1..=n as u32).map(|j| f.partial_even(EvenVar::X(j))).collect())
            .collect();
        let inv = inverse_even(&jac, target)?;
        let mut images = x_images;
        for i in 0..n {
            let mut th = SuperFunction::zero().in_chart(target);
            for (j, row) in inv.iter().enumerate() {
                th = &th + &(&row[i] * &SuperFunction::theta(j as u32 + 1).in_chart(target));
            }
            images.push(th);
        }
        Self::new("induced point", source, target, images)
    }

    /// The shift `θ′_i = θ_i + α_i(x)`, stored as `θ_i = θ′_i - α_i(x′)`.
    pub fn one_form_shift(alpha: Vec<SuperFunction>, source: ChartId, target: ChartId) -> Result<Self> {
        let n = alpha.len() as u32;
        for a in &alpha {
            if !a.is_odd() || a.odd_generators().iter().any(|g| g.kind == OddKind::Theta) {
                return Err(Error::Precondition("one-form coefficients must be odd functions of x".into()));
            }
        }
        let mut images: Vec<SuperFunction> = (1..=n).map(|i| SuperFunction::x(i).in_chart(target)).collect();
        for (i, a) in alpha.into_iter().enumerate() {
            images.push(&SuperFunction::theta(i as u32 + 1).in_chart(target) - &a.in_chart(target));
        }
        Self::new("one-form shift", source, target, images)
    }

    /// The time-`t` map of the Hamiltonian flow of an odd `Q`: images
    /// `z = exp(-t D_Q) z′`, so that pulling back along it differentiates
    /// to `δ_Q` at `t = 0`. Every term of `Q` must have odd degree at least 3
    /// (counting external parameters) so that `D_Q` is nilpotent.
    pub fn exponentiate_hamiltonian(n: u32, q: &SuperFunction, t: &Scalar, source: ChartId, target: ChartId) -> Result<Self> {
        if !q.is_odd() {
            return Err(Error::ParityMismatch("flow Hamiltonians must be odd".into()));
        }
        if q.min_odd_degree().is_some_and(|d| d < 3) {
            return Err(Error::NonTerminating("every term of Q needs odd degree ≥ 3".into()));
        }
        let q = q.clone().in_chart(target);
        let field = hamiltonian_field(&q)?;
        let coef = -t;
        let mut images = Vec::new();
        for c in coordinates(n) {
            let mut term = SuperFunction::coord(c).in_chart(target);
            let mut total = term.clone();
            let mut k = 0i64;
            loop {
                k += 1;
                term = field.apply(&term)?.scale(&(&coef / &Scalar::from_int(k)));
                if term.is_zero() {
                    break;
                }
                if k > 4 * n as i64 + 64 {
                    return Err(Error::NonTerminating("flow series did not truncate".into()));
                }
                total = &total + &term;
            }
            images.push(total);
        }
        let mut tr = Self::new("hamiltonian flow", source, target, images)?;
        tr.n = n;
        Ok(tr)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn source(&self) -> ChartId {
        self.source
    }

    pub fn target(&self) -> ChartId {
        self.target
    }

    pub fn dim(&self) -> u32 {
        self.n
    }

    pub fn images(&self) -> &[SuperFunction] {
        &self.images
    }

    pub fn image(&self, c: Coord) -> Option<&SuperFunction> {
        let n = self.n as usize;
        match c {
            Coord::Even(EvenVar::X(i)) if (1..=n).contains(&(i as usize)) => Some(&self.images[i as usize - 1]),
            Coord::Odd(g) if g.kind == OddKind::Theta && (1..=n).contains(&(g.index as usize)) => {
                Some(&self.images[n + g.index as usize - 1])
            }
            _ => None,
        }
    }

    pub fn substitution(&self) -> Substitution {
        let mut sub = Substitution::new(self.target);
        for (c, f) in coordinates(self.n).into_iter().zip(&self.images) {
            sub.insert(c, f.clone());
        }
        sub
    }

    /// Expresses a function of the old coordinates in the new ones.
    pub fn pullback(&self, f: &SuperFunction) -> Result<SuperFunction> {
        if f.chart() != self.source {
            return Err(Error::ChartMismatch(f.chart().0, self.source.0));
        }
        f.substitute(&self.substitution())
    }

    /// `M[A][B] = z^A ∂⃖/∂z′^B` (old coordinates by rows, new by columns).
    pub fn jacobian(&self) -> Result<SuperMatrix> {
        let cols = coordinates(self.n);
        let entries = self.images.iter().map(|f| cols.iter().map(|c| f.partial_right(*c)).collect()).collect();
        SuperMatrix::new(self.n as usize, self.n as usize, entries)
    }

    /// `Ber ∂(x,θ)/∂(x′,θ′)`, a function of the new coordinates.
    pub fn berezinian(&self) -> Result<SuperFunction> {
        self.jacobian()?.berezinian()
    }

    /// `Ber ∂(x′,θ′)/∂(x,θ)`, the Berezinian of the map from old to new
    /// coordinates, also written in the new coordinates.
    pub fn transformation_berezinian(&self) -> Result<SuperFunction> {
        self.berezinian()?.invert()
    }

    /// `self` followed by `next` (which must start where `self` ends).
    pub fn compose(&self, next: &Transition) -> Result<Transition> {
        if next.source != self.target {
            return Err(Error::ChartMismatch(next.source.0, self.target.0));
        }
        if next.n != self.n {
            return Err(Error::Precondition("transitions of different dimension".into()));
        }
        let sub = next.substitution();
        let images = self.images.iter().map(|f| f.substitute(&sub)).collect::<Result<Vec<_>>>()?;
        let mut t = Transition::new(format!("{} ∘ {}", next.name, self.name), self.source, next.target, images)?;
        t.n = self.n;
        Ok(t)
    }

    /// The reverse transition, for transitions whose body map is affine with
    /// constant linear part and whose odd images are linear in `θ′` with a
    /// constant matrix up to nilpotent corrections.
    pub fn inverse(&self) -> Result<Transition> {
        let n = self.n as usize;
        let coords = coordinates(self.n);
        // leading linear data L (constant) and offsets b
        let mut lin: Vec<Vec<SuperFunction>> = Vec::with_capacity(2 * n);
        for f in &self.images {
            let mut row = Vec::with_capacity(2 * n);
            for (k, c) in coords.iter().enumerate() {
                let d = f.partial_right(*c);
                let block_ok = (k < n) == (lin.len() < n);
                let lead = if block_ok { d.body() } else { Scalar::zero() };
                if block_ok && lead.vars().iter().any(|v| matches!(v, EvenVar::X(_))) {
                    return Err(Error::Unsupported("inverse needs a constant linear part".into()));
                }
                row.push(SuperFunction::scalar(lead).in_chart(self.source));
            }
            lin.push(row);
        }
        let even_blk: Vec<Vec<SuperFunction>> = lin[..n].iter().map(|r| r[..n].to_vec()).collect();
        let odd_blk: Vec<Vec<SuperFunction>> = lin[n..].iter().map(|r| r[n..].to_vec()).collect();
        let even_inv = inverse_even(&even_blk, self.source)?;
        let odd_inv = inverse_even(&odd_blk, self.source)?;
        // remainder N(z′) = F(z′) - L z′, with bodies of even images that are constant shifts
        let mut rest = Vec::with_capacity(2 * n);
        for (a, f) in self.images.iter().enumerate() {
            let mut lz = SuperFunction::zero().in_chart(self.target);
            for (b, c) in coords.iter().enumerate() {
                let l = lin[a][b].clone().in_chart(self.target);
                lz = &lz + &(&l * &SuperFunction::coord(*c).in_chart(self.target));
            }
            let r = f - &lz;
            if a < n && r.body().vars().iter().any(|v| matches!(v, EvenVar::X(_))) {
                return Err(Error::Unsupported("inverse needs an affine body map".into()));
            }
            rest.push(r);
        }
        // z′ = L⁻¹(z - N(z′)), iterated to a fixed point
        let old: Vec<SuperFunction> = coords.iter().map(|c| SuperFunction::coord(*c).in_chart(self.source)).collect();
        let mut guess: Vec<SuperFunction> = old.clone();
        for _ in 0..(4 * n + 8) {
            let mut sub = Substitution::new(self.source);
            for (c, g) in coords.iter().zip(&guess) {
                sub.insert(*c, g.clone());
            }
            let rhs: Vec<SuperFunction> = rest
                .iter()
                .zip(&old)
                .map(|(r, z)| Ok(z - &r.clone().in_chart(self.target).substitute(&sub)?))
                .collect::<Result<_>>()?;
            let mut next = Vec::with_capacity(2 * n);
            for (blk, off) in [(&even_inv, 0), (&odd_inv, n)] {
                for row in blk.iter() {
                    let mut acc = SuperFunction::zero().in_chart(self.source);
                    for (j, m) in row.iter().enumerate() {
                        acc = &acc + &(m * &rhs[off + j]);
                    }
                    next.push(acc);
                }
            }
            if next == guess {
                let mut t = Transition::new(format!("{}⁻¹", self.name), self.target, self.source, next)?;
                t.n = self.n;
                return Ok(t);
            }
            guess = next;
        }
        Err(Error::NonTerminating("inverse iteration did not reach a fixed point".into()))
    }

    /// Brackets of the images in the new Darboux coordinates compared with
    /// the canonical values `{x^i, θ_j} = δ^i_j`, all others zero.
    pub fn is_symplectomorphism(&self) -> Result<SymplecticReport> {
        let coords = coordinates(self.n);
        let mut failures = Vec::new();
        for (a, ca) in coords.iter().enumerate() {
            for (b, cb) in coords.iter().enumerate() {
                let actual = odd_bracket(&self.images[a], &self.images[b])?;
                let expected = canonical_value(*ca, *cb).in_chart(self.target);
                if actual != expected {
                    failures.push(BracketMismatch { left: *ca, right: *cb, actual, expected });
                }
            }
        }
        Ok(SymplecticReport { failures })
    }
}

fn canonical_value(a: Coord, b: Coord) -> SuperFunction {
    match (a, b) {
        (Coord::Even(EvenVar::X(i)), Coord::Odd(g)) if g.kind == OddKind::Theta && g.index == i => SuperFunction::one(),
        (Coord::Odd(g), Coord::Even(EvenVar::X(i))) if g.kind == OddKind::Theta && g.index == i => -SuperFunction::one(),
        _ => SuperFunction::zero(),
    }
}

/// Darboux coordinates `x^1..x^n, θ_1..θ_n` in order.
pub fn coordinates(n: u32) -> Vec<Coord> {
    (1..=n).map(Coord::x).chain((1..=n).map(Coord::theta)).collect()
}

#[derive(Clone, Debug)]
pub struct BracketMismatch {
    pub left: Coord,
    pub right: Coord,
    pub actual: SuperFunction,
    pub expected: SuperFunction,
}

#[derive(Clone, Debug, Default)]
pub struct SymplecticReport {
    pub failures: Vec<BracketMismatch>,
}

impl SymplecticReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for SymplecticReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "symplectic");
        }
        for m in &self.failures {
            writeln!(f, "{{{}, {}}} = {} (expected {})", m.left, m.right, m.actual, m.expected)?;
        }
        Ok(())
    }
}

impl fmt::Display for Transition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coords = coordinates(self.n);
        for (c, img) in coords.iter().zip(&self.images) {
            writeln!(f, "{c} = {img}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const A: ChartId = ChartId(0);
    const B: ChartId = ChartId(1);

    fn x(i: u32) -> SuperFunction {
        SuperFunction::x(i)
    }

    fn th(i: u32) -> SuperFunction {
        SuperFunction::theta(i)
    }

    #[test]
    fn identity_jacobian_and_berezinian() {
        let t = Transition::identity(2, A, B);
        assert_eq!(t.jacobian().unwrap(), SuperMatrix::identity(2, 2, B));
        assert!(t.berezinian().unwrap().is_one());
        assert!(t.is_symplectomorphism().unwrap().passed());
    }

    #[test]
    fn scaling_has_transformation_berezinian_four() {
        let t = Transition::scaling(1, A, B);
        assert_eq!(t.berezinian().unwrap(), SuperFunction::ratio(1, 4).in_chart(B));
        assert_eq!(t.transformation_berezinian().unwrap(), SuperFunction::int(4).in_chart(B));
        assert!(t.is_symplectomorphism().unwrap().passed());
    }

    #[test]
    fn stretching_only_x_is_not_symplectic() {
        let t = Transition::new("stretch", A, B, vec![x(1).scale_ratio(1, 2), th(1)]).unwrap();
        let report = t.is_symplectomorphism().unwrap();
        assert!(!report.passed());
    }

    #[test]
    fn closed_one_form_shift() {
        // α = d(ε x¹x²) = ε x² dx¹ + ε x¹ dx²
        let e = SuperFunction::eps(1);
        let closed = Transition::one_form_shift(vec![&e * &x(2), &e * &x(1)], A, B).unwrap();
        assert!(closed.is_symplectomorphism().unwrap().passed());
        assert!(closed.berezinian().unwrap().is_one());
        let open = Transition::one_form_shift(vec![&e * &x(2), SuperFunction::zero()], A, B).unwrap();
        assert!(!open.is_symplectomorphism().unwrap().passed());
    }

    #[test]
    fn induced_point_berezinian_is_square_of_determinant() {
        // x¹ = x¹′ + (x²′)², x² = 3x²′
        let t = Transition::induced_point(vec![&x(1) + &(&x(2) * &x(2)), x(2).scale_int(3)], A, B).unwrap();
        assert!(t.is_symplectomorphism().unwrap().passed());
        assert_eq!(t.berezinian().unwrap(), SuperFunction::int(9).in_chart(B));
        let m = t.jacobian().unwrap();
        assert!(m.entry(0, 2).is_zero() && m.entry(0, 3).is_zero());
    }

    #[test]
    fn hamiltonian_flow_is_symplectic_with_group_law() {
        let q = &(&SuperFunction::eps(1) * &th(1)) * &th(2);
        let t1 = Scalar::from_int(1);
        let t2 = Scalar::from_int(2);
        let f1 = Transition::exponentiate_hamiltonian(2, &q, &t1, A, B).unwrap();
        assert!(f1.is_symplectomorphism().unwrap().passed());
        let f1b = Transition::exponentiate_hamiltonian(2, &q, &t1, B, ChartId(2)).unwrap();
        let f2 = Transition::exponentiate_hamiltonian(2, &q, &t2, A, ChartId(2)).unwrap();
        assert_eq!(f1.compose(&f1b).unwrap().images(), f2.images());
        let zero = Transition::exponentiate_hamiltonian(2, &SuperFunction::zero(), &t1, A, B).unwrap();
        assert_eq!(zero.images(), Transition::identity(2, A, B).images());
    }

    #[test]
    fn flow_of_cubic_hamiltonian_is_identical_on_body() {
        let q = &(&(&x(1) * &th(1)) * &th(2)) * &th(3);
        let f = Transition::exponentiate_hamiltonian(3, &q, &Scalar::from_int(1), A, B).unwrap();
        assert!(f.is_symplectomorphism().unwrap().passed());
        for (k, img) in f.images().iter().enumerate() {
            let c = coordinates(3)[k];
            let lin = img.kind_degree_part(OddKind::Theta, (k >= 3) as usize);
            assert_eq!(lin, SuperFunction::coord(c).in_chart(B), "{c}");
        }
        assert!(Transition::exponentiate_hamiltonian(2, &th(1), &Scalar::from_int(1), A, B).is_err());
    }

    #[test]
    fn inverse_round_trip() {
        let e = SuperFunction::eps(1);
        let t = Transition::new(
            "mixed",
            A,
            B,
            vec![&x(1).scale_int(2) + &(&e * &th(1)), x(2), &th(1).scale_ratio(1, 2) + &(&e * &x(2)), &th(2) - &th(1)],
        )
        .unwrap();
        let inv = t.inverse().unwrap();
        let round = t.compose(&inv).unwrap();
        assert_eq!(round.images(), Transition::identity(2, A, A).images());
    }
}
