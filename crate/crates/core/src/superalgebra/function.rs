//! Elements of the Grassmann algebra over [`Scalar`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{EvenVar, Scalar};

use super::generators::{Coord, OddGen, OddKind, ThetaMonomial};
use super::parity::Parity;

/// Identifier of a coordinate chart. Values in different charts never mix.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub struct ChartId(pub u32);

impl fmt::Display for ChartId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A function of the even indeterminates and odd generators in one chart:
/// a finite sum `Σ c_m · m` of odd monomials `m` with [`Scalar`] coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SuperFunction {
    chart: ChartId,
    terms: BTreeMap<ThetaMonomial, Scalar>,
}

impl SuperFunction {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(Scalar::one())
    }

    pub fn scalar(c: Scalar) -> Self {
        Self::from_terms([(ThetaMonomial::one(), c)])
    }

    pub fn int(v: i64) -> Self {
        Self::scalar(Scalar::from_int(v))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::scalar(Scalar::from_ratio(n, d))
    }

    pub fn even_var(v: EvenVar) -> Self {
        Self::scalar(Scalar::var(v))
    }

    pub fn x(i: u32) -> Self {
        Self::even_var(EvenVar::X(i))
    }

    pub fn hbar() -> Self {
        Self::even_var(EvenVar::Hbar)
    }

    pub fn param(i: u32) -> Self {
        Self::even_var(EvenVar::Param(i))
    }

    pub fn gen(g: OddGen) -> Self {
        Self::from_terms([(ThetaMonomial::single(g), Scalar::one())])
    }

    pub fn theta(i: u32) -> Self {
        Self::gen(OddGen::theta(i))
    }

    pub fn xi(i: u32) -> Self {
        Self::gen(OddGen::xi(i))
    }

    pub fn eps(i: u32) -> Self {
        Self::gen(OddGen::eps(i))
    }

    pub fn coord(c: Coord) -> Self {
        match c {
            Coord::Even(v) => Self::even_var(v),
            Coord::Odd(g) => Self::gen(g),
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (ThetaMonomial, Scalar)>) -> Self {
        let mut f = Self::zero();
        for (m, c) in terms {
            f.add_term(m, c);
        }
        f
    }

    pub fn add_term(&mut self, m: ThetaMonomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn chart(&self) -> ChartId {
        self.chart
    }

    /// The same function relabelled into chart `c`.
    pub fn in_chart(mut self, c: ChartId) -> Self {
        self.chart = c;
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ThetaMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.body().is_one()
    }

    pub fn coefficient(&self, m: &ThetaMonomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// The coefficient of the empty monomial.
    pub fn body(&self) -> Scalar {
        self.coefficient(&ThetaMonomial::one())
    }

    /// Parity if homogeneous; zero counts as even.
    pub fn parity(&self) -> Option<Parity> {
        let mut p = None;
        for m in self.terms.keys() {
            let q = Parity::from_bit(m.len());
            match p {
                None => p = Some(q),
                Some(r) if r != q => return None,
                _ => {}
            }
        }
        Some(p.unwrap_or(Parity::Even))
    }

    pub fn is_even(&self) -> bool {
        self.parity() == Some(Parity::Even)
    }

    pub fn is_odd(&self) -> bool {
        self.terms.keys().all(ThetaMonomial::is_odd)
    }

    pub fn parity_of(&self) -> Result<Parity> {
        self.parity()
            .ok_or_else(|| Error::ParityMismatch("function is not parity-homogeneous".into()))
    }

    /// `(f_even, f_odd)` with `f = f_even + f_odd`.
    pub fn parity_split(&self) -> (SuperFunction, SuperFunction) {
        let mut even = SuperFunction::zero().in_chart(self.chart);
        let mut odd = even.clone();
        for (m, c) in &self.terms {
            let target = if m.is_odd() { &mut odd } else { &mut even };
            target.terms.insert(m.clone(), c.clone());
        }
        (even, odd)
    }

    /// Non-zero homogeneous parts, paired with their parity.
    pub fn homogeneous_parts(&self) -> Vec<(Parity, SuperFunction)> {
        let (e, o) = self.parity_split();
        let mut out = Vec::new();
        if !e.is_zero() {
            out.push((Parity::Even, e));
        }
        if !o.is_zero() {
            out.push((Parity::Odd, o));
        }
        out
    }

    /// Odd generators occurring anywhere.
    pub fn odd_generators(&self) -> BTreeSet<OddGen> {
        self.terms.keys().flat_map(|m| m.gens().iter().copied()).collect()
    }

    pub fn even_vars(&self) -> BTreeSet<EvenVar> {
        self.terms.values().flat_map(|c| c.vars()).collect()
    }

    /// All Darboux indices `i` with `x^i` or `θ_i` present.
    pub fn darboux_indices(&self) -> BTreeSet<u32> {
        let mut s: BTreeSet<u32> = self
            .odd_generators()
            .into_iter()
            .filter(|g| g.kind == OddKind::Theta)
            .map(|g| g.index)
            .collect();
        s.extend(self.even_vars().into_iter().filter_map(|v| match v {
            EvenVar::X(i) => Some(i),
            _ => None,
        }));
        s
    }

    /// Minimal number of odd generators over all terms (`None` for zero).
    pub fn min_odd_degree(&self) -> Option<usize> {
        self.terms.keys().map(ThetaMonomial::len).min()
    }

    /// Terms of the given degree in generators of `kind`.
    pub fn kind_degree_part(&self, kind: OddKind, degree: usize) -> SuperFunction {
        let mut out = SuperFunction::zero().in_chart(self.chart);
        for (m, c) in &self.terms {
            if m.count_kind(kind) == degree {
                out.terms.insert(m.clone(), c.clone());
            }
        }
        out
    }

    fn check_chart(&self, other: &SuperFunction) -> Result<()> {
        if self.chart != other.chart {
            return Err(Error::ChartMismatch(self.chart.0, other.chart.0));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &SuperFunction) -> Result<SuperFunction> {
        self.check_chart(other)?;
        let (big, small) = if self.terms.len() >= other.terms.len() { (self, other) } else { (other, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &SuperFunction) -> Result<SuperFunction> {
        self.try_add(&-other)
    }

    /// Supercommutative product.
    pub fn try_mul(&self, other: &SuperFunction) -> Result<SuperFunction> {
        self.check_chart(other)?;
        let mut out = SuperFunction::zero().in_chart(self.chart);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((sign, m)) = ma.mul(mb) {
                    let c = ca * cb;
                    out.add_term(m, if sign < 0 { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> SuperFunction {
        if c.is_zero() {
            return SuperFunction::zero().in_chart(self.chart);
        }
        SuperFunction {
            chart: self.chart,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn scale_int(&self, k: i64) -> SuperFunction {
        self.scale(&Scalar::from_int(k))
    }

    pub fn scale_ratio(&self, n: i64, d: i64) -> SuperFunction {
        self.scale(&Scalar::from_ratio(n, d))
    }

    pub fn pow(&self, e: u32) -> SuperFunction {
        let mut out = SuperFunction::one().in_chart(self.chart);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Applies `f` to every coefficient.
    pub fn map_coefficients(&self, f: impl Fn(&Scalar) -> Scalar) -> SuperFunction {
        let mut out = SuperFunction::zero().in_chart(self.chart);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    pub fn try_map_coefficients(&self, f: impl Fn(&Scalar) -> Result<Scalar>) -> Result<SuperFunction> {
        let mut out = SuperFunction::zero().in_chart(self.chart);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c)?);
        }
        Ok(out)
    }

    /// `∂f/∂v` for an even indeterminate, coefficientwise.
    pub fn partial_even(&self, v: EvenVar) -> SuperFunction {
        self.map_coefficients(|c| c.derivative(v))
    }

    /// `∂f/∂x^i`.
    pub fn partial_x(&self, i: usize) -> Result<SuperFunction> {
        Ok(self.partial_even(EvenVar::X(check_index(i)?)))
    }

    /// Left derivative `∂f/∂θ_i`.
    pub fn partial_odd(&self, i: usize) -> Result<SuperFunction> {
        Ok(self.partial_gen(OddGen::theta(check_index(i)?)))
    }

    /// Left derivative by an odd generator: `∂(g·m)/∂g = m`.
    pub fn partial_gen(&self, g: OddGen) -> SuperFunction {
        let mut out = SuperFunction::zero().in_chart(self.chart);
        for (m, c) in &self.terms {
            if let Some((sign, rest)) = m.remove_left(g) {
                out.add_term(rest, if sign < 0 { -c } else { c.clone() });
            }
        }
        out
    }

    /// Right derivative by an odd generator: `(m·g) ∂⃖/∂g = m`.
    pub fn partial_gen_right(&self, g: OddGen) -> SuperFunction {
        let mut out = SuperFunction::zero().in_chart(self.chart);
        for (m, c) in &self.terms {
            if let Some((sign, rest)) = m.remove_right(g) {
                out.add_term(rest, if sign < 0 { -c } else { c.clone() });
            }
        }
        out
    }

    /// Left derivative by any coordinate.
    pub fn partial(&self, c: Coord) -> SuperFunction {
        match c {
            Coord::Even(v) => self.partial_even(v),
            Coord::Odd(g) => self.partial_gen(g),
        }
    }

    /// Right derivative by any coordinate.
    pub fn partial_right(&self, c: Coord) -> SuperFunction {
        match c {
            Coord::Even(v) => self.partial_even(v),
            Coord::Odd(g) => self.partial_gen_right(g),
        }
    }

    /// Multiplicative inverse of an even element with invertible body.
    pub fn invert(&self) -> Result<SuperFunction> {
        if !self.is_even() {
            return Err(Error::NotInvertible("odd or inhomogeneous element".into()));
        }
        let body = self.body();
        if body.is_zero() {
            return Err(Error::NotInvertible("body is zero".into()));
        }
        let body_inv = body.inv()?;
        let mut nil = self.clone();
        nil.terms.remove(&ThetaMonomial::one());
        // u = -n / body; 1/(body + n) = body⁻¹ Σ u^k
        let u = nil.scale(&-&body_inv);
        Ok(geometric_like_series(&u, |_| Scalar::one()).scale(&body_inv))
    }

    /// Principal square root of an even element whose body is an exact square.
    pub fn sqrt_even(&self) -> Result<SuperFunction> {
        if !self.is_even() {
            return Err(Error::NoExactSquareRoot("odd or inhomogeneous element".into()));
        }
        let body = self.body();
        let root = body
            .sqrt()
            .ok_or_else(|| Error::NoExactSquareRoot(format!("body {body} is not a perfect square")))?;
        if body.is_zero() {
            if self.is_zero() {
                return Ok(self.clone());
            }
            return Err(Error::NoExactSquareRoot("body is zero".into()));
        }
        let mut nil = self.clone();
        nil.terms.remove(&ThetaMonomial::one());
        let u = nil.scale(&body.inv()?);
        // √(1+u) = Σ binom(1/2, k) u^k
        let series = geometric_like_series(&u, |k| {
            let mut c = Scalar::one();
            for j in 0..k {
                let num = Scalar::from_ratio(1 - 2 * j as i64, 2);
                c = &(&c * &num) / &Scalar::from_int(j as i64 + 1);
            }
            c
        });
        Ok(series.scale(&root))
    }

    /// `exp(g)` for even `g` with zero body; a finite sum.
    pub fn exp_nilpotent(&self) -> Result<SuperFunction> {
        if !self.is_even() || !self.body().is_zero() {
            return Err(Error::Precondition("exp needs an even element with zero body".into()));
        }
        Ok(geometric_like_series(self, |k| {
            let mut f = Scalar::one();
            for j in 1..=k {
                f = &f / &Scalar::from_int(j as i64);
            }
            f
        }))
    }

    /// Simultaneous substitution of coordinates by functions in the target chart.
    pub fn substitute(&self, sub: &Substitution) -> Result<SuperFunction> {
        sub.validate()?;
        let mut bodies: BTreeMap<EvenVar, Scalar> = BTreeMap::new();
        let mut nils: Vec<(EvenVar, SuperFunction)> = Vec::new();
        for (c, image) in &sub.images {
            if let Coord::Even(v) = c {
                let b = image.body();
                let mut n = image.clone();
                n.terms.remove(&ThetaMonomial::one());
                bodies.insert(*v, b);
                if !n.is_zero() {
                    nils.push((*v, n));
                }
            }
        }
        let body_of = |v: EvenVar| bodies.get(&v).cloned();
        let mut out = SuperFunction::zero().in_chart(sub.target);
        let mut odd_cache: BTreeMap<OddGen, SuperFunction> = BTreeMap::new();
        for (m, c) in &self.terms {
            let even_part = taylor_expand(c, &body_of, &nils, sub.target)?;
            if even_part.is_zero() {
                continue;
            }
            let mut prod = even_part;
            for g in m.gens() {
                let image = odd_cache
                    .entry(*g)
                    .or_insert_with(|| {
                        sub.images
                            .get(&Coord::Odd(*g))
                            .cloned()
                            .unwrap_or_else(|| SuperFunction::gen(*g).in_chart(sub.target))
                    })
                    .clone();
                prod = prod.try_mul(&image)?;
                if prod.is_zero() {
                    break;
                }
            }
            out = out.try_add(&prod)?;
        }
        Ok(out)
    }

    /// Left Berezin integral over `over` (in the given order):
    /// `∫ g₁…g_k · r = r` and any term missing a generator integrates to zero.
    pub fn berezin_integral(&self, over: &[OddGen]) -> SuperFunction {
        let mut out = SuperFunction::zero().in_chart(self.chart);
        for (m, c) in &self.terms {
            if let Some((sign, rest)) = m.split_left(over) {
                out.add_term(rest, if sign < 0 { -c } else { c.clone() });
            }
        }
        out
    }

    /// Sets every odd generator of `kind` to zero.
    pub fn drop_kind(&self, kind: OddKind) -> SuperFunction {
        let mut out = SuperFunction::zero().in_chart(self.chart);
        for (m, c) in &self.terms {
            if m.count_kind(kind) == 0 {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }
}

fn check_index(i: usize) -> Result<u32> {
    if i == 0 || i > u32::MAX as usize {
        return Err(Error::UnknownIndex(i));
    }
    Ok(i as u32)
}

/// `Σ_k coeff(k) u^k` for nilpotent `u`, stopping once `u^k` vanishes.
fn geometric_like_series(u: &SuperFunction, coeff: impl Fn(usize) -> Scalar) -> SuperFunction {
    let mut total = SuperFunction::one().in_chart(u.chart);
    let mut power = total.clone();
    let mut k = 0;
    loop {
        k += 1;
        power = &power * u;
        if power.is_zero() {
            break;
        }
        total = &total + &power.scale(&coeff(k));
    }
    total
}

/// `c(b + n) = Σ_α ∂^α c(b) n^α / α!`, exact because each `n_v` is nilpotent.
fn taylor_expand(
    c: &Scalar,
    body_of: &dyn Fn(EvenVar) -> Option<Scalar>,
    nils: &[(EvenVar, SuperFunction)],
    chart: ChartId,
) -> Result<SuperFunction> {
    let active: Vec<&(EvenVar, SuperFunction)> = nils.iter().filter(|(v, _)| c.contains_var(*v)).collect();
    let mut out = SuperFunction::zero().in_chart(chart);
    let start = SuperFunction::one().in_chart(chart);
    taylor_rec(c, body_of, &active, 0, 0, &start, &mut out)?;
    Ok(out)
}

fn taylor_rec(
    deriv: &Scalar,
    body_of: &dyn Fn(EvenVar) -> Option<Scalar>,
    active: &[&(EvenVar, SuperFunction)],
    start: usize,
    last_exp: u32,
    factor: &SuperFunction,
    out: &mut SuperFunction,
) -> Result<()> {
    let value = deriv.substitute(body_of)?;
    *out = out.try_add(&factor.scale(&value))?;
    for k in start..active.len() {
        let (v, n) = active[k];
        let exp = if k == start { last_exp + 1 } else { 1 };
        let next_factor = factor.try_mul(n)?.scale(&Scalar::from_ratio(1, exp as i64));
        if next_factor.is_zero() {
            continue;
        }
        let next_deriv = deriv.derivative(*v);
        if next_deriv.is_zero() {
            continue;
        }
        taylor_rec(&next_deriv, body_of, active, k, exp, &next_factor, out)?;
    }
    Ok(())
}

/// A simultaneous substitution `coord ↦ image`, images living in `target`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Substitution {
    pub target: ChartId,
    pub images: BTreeMap<Coord, SuperFunction>,
}

impl Substitution {
    pub fn new(target: ChartId) -> Self {
        Substitution { target, images: BTreeMap::new() }
    }

    pub fn with(mut self, c: Coord, image: SuperFunction) -> Self {
        self.images.insert(c, image.in_chart(self.target));
        self
    }

    pub fn insert(&mut self, c: Coord, image: SuperFunction) {
        let t = self.target;
        self.images.insert(c, image.in_chart(t));
    }

    pub fn validate(&self) -> Result<()> {
        for (c, image) in &self.images {
            if image.chart() != self.target {
                return Err(Error::ChartMismatch(image.chart().0, self.target.0));
            }
            let ok = match c {
                Coord::Even(_) => image.is_even(),
                Coord::Odd(_) => image.is_odd(),
            };
            if !ok {
                return Err(Error::ParityMismatch(format!("image of {c} has the wrong parity")));
            }
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr for &SuperFunction {
            type Output = SuperFunction;
            /// Panics when the operands live in different charts; the
            /// `try_*` methods report that as an error instead.
            fn $m(self, rhs: &SuperFunction) -> SuperFunction {
                self.$try(rhs).expect("operands in different charts")
            }
        }
        impl $tr for SuperFunction {
            type Output = SuperFunction;
            fn $m(self, rhs: SuperFunction) -> SuperFunction {
                (&self).$try(&rhs).expect("operands in different charts")
            }
        }
        impl $tr<&SuperFunction> for SuperFunction {
            type Output = SuperFunction;
            fn $m(self, rhs: &SuperFunction) -> SuperFunction {
                (&self).$try(rhs).expect("operands in different charts")
            }
        }
        impl $tr<SuperFunction> for &SuperFunction {
            type Output = SuperFunction;
            fn $m(self, rhs: SuperFunction) -> SuperFunction {
                self.$try(&rhs).expect("operands in different charts")
            }
        }
    };
}
binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &SuperFunction {
    type Output = SuperFunction;
    fn neg(self) -> SuperFunction {
        SuperFunction {
            chart: self.chart,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for SuperFunction {
    type Output = SuperFunction;
    fn neg(self) -> SuperFunction {
        -&self
    }
}

impl From<Scalar> for SuperFunction {
    fn from(c: Scalar) -> Self {
        SuperFunction::scalar(c)
    }
}

impl From<i64> for SuperFunction {
    fn from(v: i64) -> Self {
        SuperFunction::int(v)
    }
}

fn format_term(m: &ThetaMonomial, c: &Scalar) -> String {
    if m.is_empty() {
        return c.to_string();
    }
    if c.is_one() {
        return m.to_string();
    }
    if (-c).is_one() {
        return format!("-{m}");
    }
    let simple = c.is_polynomial() && c.numer().num_terms() == 1 && {
        let (_, k) = c.numer().leading().unwrap();
        k.is_real()
    };
    if simple {
        format!("{c}*{m}")
    } else {
        format!("({c})*{m}")
    }
}

impl fmt::Display for SuperFunction {
    /// Canonical, re-parseable form.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            // a bare multi-term polynomial body needs no parentheses only when first
            let piece = if m.is_empty() && !first && c.numer().num_terms() > 1 && c.is_polynomial() {
                format!("({c})")
            } else {
                format_term(m, c)
            };
            if first {
                write!(f, "{piece}")?;
                first = false;
            } else if let Some(rest) = piece.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {piece}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn th(i: u32) -> SuperFunction {
        SuperFunction::theta(i)
    }
    fn x(i: u32) -> SuperFunction {
        SuperFunction::x(i)
    }

    #[test]
    fn anticommutation_and_nilpotency() {
        assert_eq!(&th(1) * &th(2), -(&th(2) * &th(1)));
        assert!((&th(1) * &th(1)).is_zero());
        // (x1 + th1 th2)(x1 - th1 th2) = x1^2
        let a = &x(1) + &(&th(1) * &th(2));
        let b = &x(1) - &(&th(1) * &th(2));
        assert_eq!(&a * &b, &x(1) * &x(1));
    }

    #[test]
    fn left_derivative_signs() {
        let t12 = &th(1) * &th(2);
        assert_eq!(t12.partial_odd(2).unwrap(), -th(1));
        assert_eq!(t12.partial_odd(1).unwrap(), th(2));
        let f = &(&x(1) * &x(1)) * &th(1);
        assert_eq!(f.partial_x(1).unwrap(), (&x(1) * &th(1)).scale_int(2));
        assert!(matches!(t12.partial_odd(0), Err(Error::UnknownIndex(0))));
        // right derivative: (th1 th2) ∂⃖/∂th1 = -th2
        assert_eq!(t12.partial_gen_right(OddGen::theta(1)), -th(2));
    }

    #[test]
    fn inversion() {
        let t12 = &th(1) * &th(2);
        assert_eq!((&SuperFunction::one() + &t12).invert().unwrap(), &SuperFunction::one() - &t12);
        let inv_x = SuperFunction::scalar(Scalar::x(1).inv().unwrap());
        assert_eq!(x(1).invert().unwrap(), inv_x);
        let f = &x(1) + &t12;
        let expected = &inv_x - &t12.scale(&(&Scalar::x(1) * &Scalar::x(1)).inv().unwrap());
        assert_eq!(f.invert().unwrap(), expected);
        assert_eq!(&f * &f.invert().unwrap(), SuperFunction::one());
        assert!(matches!(th(1).invert(), Err(Error::NotInvertible(_))));
        assert!(matches!(t12.invert(), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn square_roots() {
        assert_eq!(SuperFunction::int(4).sqrt_even().unwrap(), SuperFunction::int(2));
        let t12 = &th(1) * &th(2);
        let f = &(&x(1) * &x(1)) * &(&SuperFunction::one() + &t12);
        let r = f.sqrt_even().unwrap();
        assert_eq!(r, &x(1) * &(&SuperFunction::one() + &t12.scale_ratio(1, 2)));
        assert_eq!(&r * &r, f);
        let odd = &SuperFunction::one() + &th(1);
        assert!(matches!(odd.sqrt_even(), Err(Error::NoExactSquareRoot(_))));
        assert!(matches!(x(1).sqrt_even(), Err(Error::NoExactSquareRoot(_))));
    }

    #[test]
    fn substitution_examples() {
        // scaling x1 -> 2 x1, th1 -> th1/2 leaves x1 th1 invariant
        let sub = Substitution::new(ChartId(0))
            .with(Coord::x(1), x(1).scale_int(2))
            .with(Coord::theta(1), th(1).scale_ratio(1, 2));
        assert_eq!((&x(1) * &th(1)).substitute(&sub).unwrap(), &x(1) * &th(1));
        // 1/x1 with x1 -> x1 + th1 th2
        let t12 = &th(1) * &th(2);
        let sub = Substitution::new(ChartId(0)).with(Coord::x(1), &x(1) + &t12);
        let inv = x(1).invert().unwrap();
        let got = inv.substitute(&sub).unwrap();
        assert_eq!(got, (&x(1) + &t12).invert().unwrap());
        // odd shift by an external parameter
        let alpha = &x(1) * &SuperFunction::eps(1);
        let sub = Substitution::new(ChartId(0)).with(Coord::theta(1), &th(1) + &alpha);
        assert_eq!(th(1).substitute(&sub).unwrap(), &th(1) + &alpha);
        // parity violation
        let bad = Substitution::new(ChartId(0)).with(Coord::theta(1), x(1));
        assert!(matches!(th(1).substitute(&bad), Err(Error::ParityMismatch(_))));
    }

    #[test]
    fn berezin_integrals() {
        let gens = [OddGen::theta(1), OddGen::theta(2)];
        assert_eq!((&th(1) * &th(2)).berezin_integral(&gens), SuperFunction::one());
        assert!(th(1).berezin_integral(&gens).is_zero());
        // ∫ exp(-i ξ1 θ1) dξ = -i θ1
        let i = SuperFunction::scalar(Scalar::i());
        let kernel = &SuperFunction::one() - &(&i * &(&SuperFunction::xi(1) * &th(1)));
        assert_eq!(kernel.berezin_integral(&[OddGen::xi(1)]), -(&i * &th(1)));
    }

    #[test]
    fn chart_mismatch_is_an_error() {
        let a = x(1).in_chart(ChartId(1));
        assert_eq!(a.try_mul(&x(1)), Err(Error::ChartMismatch(1, 0)));
    }
}
