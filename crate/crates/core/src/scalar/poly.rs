//! Sparse multivariate polynomials over ℚ(i) in the even indeterminates.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use smallvec::SmallVec;

use super::gauss::GaussianRational;

/// An even (commuting) indeterminate.
///
/// The variant order doubles as the variable priority of the lexicographic
/// monomial order: `X` is the most significant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EvenVar {
    /// Even Darboux coordinate `x^i` (1-based).
    X(u32),
    /// Even fiber coordinate on a cotangent bundle, conjugate to base coordinate `i`.
    Fiber(u32),
    /// Auxiliary even parameter (flow times, deformation parameters).
    Param(u32),
    /// Planck's constant as a formal even indeterminate.
    Hbar,
}

impl fmt::Display for EvenVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvenVar::X(i) => write!(f, "x{i}"),
            EvenVar::Fiber(i) => write!(f, "p{i}"),
            EvenVar::Param(i) => write!(f, "t{i}"),
            EvenVar::Hbar => write!(f, "hbar"),
        }
    }
}

/// Power product of even variables, sorted by variable, no zero exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[(EvenVar, u32); 4]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: EvenVar, e: u32) -> Self {
        if e == 0 {
            Self::one()
        } else {
            Monomial(smallvec::smallvec![(v, e)])
        }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (EvenVar, u32)>) -> Self {
        let mut m = Self::one();
        for (v, e) in pairs {
            m = m.mul(&Self::var(v, e));
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pairs(&self) -> &[(EvenVar, u32)] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, v: EvenVar) -> u32 {
        self.0.iter().find(|(w, _)| *w == v).map_or(0, |(_, e)| *e)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.0.iter().any(|&(v, d)| self.exponent(v) < d) {
            return None;
        }
        Some(Monomial(
            self.0
                .iter()
                .filter_map(|&(v, e)| {
                    let r = e - other.exponent(v);
                    (r > 0).then_some((v, r))
                })
                .collect(),
        ))
    }

    /// Removes variable `v`, returning the remaining monomial and its exponent.
    pub fn split_var(&self, v: EvenVar) -> (Monomial, u32) {
        let mut e = 0;
        let rest = self
            .0
            .iter()
            .filter(|(w, k)| {
                if *w == v {
                    e = *k;
                    false
                } else {
                    true
                }
            })
            .copied()
            .collect();
        (Monomial(rest), e)
    }

    /// Square root if all exponents are even.
    pub fn sqrt(&self) -> Option<Monomial> {
        if self.0.iter().any(|(_, e)| e % 2 != 0) {
            return None;
        }
        Some(Monomial(self.0.iter().map(|&(v, e)| (v, e / 2)).collect()))
    }
}

impl Ord for Monomial {
    /// Lexicographic order with `EvenVar` priority.
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        for k in 0..a.len().min(b.len()) {
            let ((va, ea), (vb, eb)) = (a[k], b[k]);
            if va != vb {
                // the side holding the more significant variable is larger
                return if va < vb { Ordering::Greater } else { Ordering::Less };
            }
            if ea != eb {
                return ea.cmp(&eb);
            }
        }
        a.len().cmp(&b.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn var(v: EvenVar) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::var(v, 1), GaussianRational::one());
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, GaussianRational)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// The value if the polynomial has no variables (zero included).
    pub fn constant_value(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.constant_value().is_some()
    }

    pub fn leading(&self) -> Option<(&Monomial, &GaussianRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> GaussianRational {
        self.leading().map_or_else(GaussianRational::zero, |(_, c)| c.clone())
    }

    pub fn vars(&self) -> BTreeSet<EvenVar> {
        self.terms.keys().flat_map(|m| m.pairs().iter().map(|(v, _)| *v)).collect()
    }

    pub fn contains_var(&self, v: EvenVar) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    pub fn degree_in(&self, v: EvenVar) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::total_degree).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &GaussianRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &GaussianRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect() }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let (big, small) = if self.terms.len() >= other.terms.len() { (self, other) } else { (other, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if let Some(c) = self.constant_value() {
            return other.scale(&c);
        }
        if let Some(c) = other.constant_value() {
            return self.scale(&c);
        }
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn derivative(&self, v: EvenVar) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let (rest, e) = m.split_var(v);
            if e == 0 {
                continue;
            }
            let m2 = rest.mul(&Monomial::var(v, e - 1));
            out.add_term(m2, c * &GaussianRational::from_int(e as i64));
        }
        out
    }

    /// Coefficients of `self` viewed as a univariate polynomial in `v`.
    pub fn to_univariate(&self, v: EvenVar) -> Vec<Poly> {
        let mut coeffs = vec![Poly::zero(); self.degree_in(v) as usize + 1];
        for (m, c) in &self.terms {
            let (rest, e) = m.split_var(v);
            coeffs[e as usize].add_term(rest, c.clone());
        }
        coeffs
    }

    pub fn from_univariate(v: EvenVar, coeffs: &[Poly]) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in coeffs.iter().enumerate() {
            out = out.add(&c.mul_monomial(&Monomial::var(v, e as u32), &GaussianRational::one()));
        }
        out
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.inv()?));
        }
        let (dm, dc) = d.leading().map(|(m, c)| (m.clone(), c.clone()))?;
        let dc_inv = dc.inv()?;
        let mut r = self.clone();
        let mut q = Poly::zero();
        while let Some((rm, rc)) = r.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let tm = rm.div(&dm)?;
            let tc = &rc * &dc_inv;
            r = r.sub(&d.mul_monomial(&tm, &tc));
            q.add_term(tm, tc);
        }
        Some(q)
    }

    /// Scales so that the lexicographically leading coefficient is 1.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.inv().unwrap()),
        }
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return Poly::one();
        }
        if self.terms.len() == 1 || other.terms.len() == 1 {
            // a monomial's divisors are monomials
            let (single, poly) = if self.terms.len() == 1 { (self, other) } else { (other, self) };
            let (ma, _) = single.leading().unwrap();
            let common = Monomial(
                ma.pairs()
                    .iter()
                    .filter_map(|&(v, e)| {
                        let f = poly.terms.keys().map(|m| m.exponent(v)).min().unwrap_or(0);
                        (f > 0).then(|| (v, e.min(f)))
                    })
                    .collect(),
            );
            return Poly::from_terms([(common, GaussianRational::one())]);
        }
        if self == other {
            return self.monic();
        }
        // a variable missing from one side: the gcd divides each of its coefficients
        let (va, vb) = (self.vars(), other.vars());
        let missing = va.iter().find(|v| !vb.contains(v)).map(|v| (*v, self, other));
        let missing = missing.or_else(|| vb.iter().find(|v| !va.contains(v)).map(|v| (*v, other, self)));
        if let Some((v, with, without)) = missing {
            let mut coeffs: Vec<Poly> = with.to_univariate(v).into_iter().filter(|c| !c.is_zero()).collect();
            coeffs.sort_by_key(Poly::num_terms);
            let mut g = without.monic();
            for c in &coeffs {
                g = g.gcd(c);
                if g.is_one() {
                    break;
                }
            }
            return g;
        }
        let vars: BTreeSet<EvenVar> = va.union(&vb).copied().collect();
        // same variables on both sides; the first one is the main variable
        let v = *vars.iter().next().expect("nonconstant");
        let ua = self.to_univariate(v);
        let ub = other.to_univariate(v);
        let ca = content(&ua);
        let cb = content(&ub);
        let g0 = ca.gcd(&cb);
        let mut f: Vec<Poly> = ua.iter().map(|c| c.div_exact(&ca).unwrap()).collect();
        let mut g: Vec<Poly> = ub.iter().map(|c| c.div_exact(&cb).unwrap()).collect();
        if f.len() < g.len() {
            std::mem::swap(&mut f, &mut g);
        }
        loop {
            let r = pseudo_remainder(&f, &g);
            if r.is_empty() {
                break;
            }
            if r.len() == 1 {
                g = vec![Poly::one()];
                break;
            }
            f = g;
            g = normalized(primitive_part(&r));
        }
        let g = primitive_part(&g);
        g0.mul(&Poly::from_univariate(v, &g)).monic()
    }

    /// Square root with leading coefficient normalized positive, if exact.
    pub fn sqrt(&self) -> Option<Poly> {
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let (lm, lc) = self.leading()?;
        let root_lead_m = lm.sqrt()?;
        let root_lead_c = lc.sqrt()?;
        let mut root = Poly::from_terms([(root_lead_m.clone(), root_lead_c.clone())]);
        let two_lead_inv = (&GaussianRational::from_int(2) * &root_lead_c).inv()?;
        let max_steps = self.num_terms() * 4 + 8;
        let mut rem = self.sub(&root.mul(&root));
        for _ in 0..max_steps {
            let Some((rm, rc)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) else {
                return Some(root);
            };
            // next root term t satisfies 2·LT(root)·t = LT(rem)
            let tm = rm.div(&root_lead_m)?;
            if tm >= root_lead_m {
                return None;
            }
            let tc = &rc * &two_lead_inv;
            let t = Poly::from_terms([(tm, tc)]);
            rem = rem.sub(&root.scale(&GaussianRational::from_int(2)).mul(&t)).sub(&t.mul(&t));
            root = root.add(&t);
        }
        rem.is_zero().then_some(root)
    }
}

fn trim(v: &mut Vec<Poly>) {
    while v.last().is_some_and(Poly::is_zero) {
        v.pop();
    }
}

fn content(coeffs: &[Poly]) -> Poly {
    let mut g = Poly::zero();
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive_part(coeffs: &[Poly]) -> Vec<Poly> {
    let c = content(coeffs);
    if c.is_zero() {
        return Vec::new();
    }
    coeffs.iter().map(|p| p.div_exact(&c).unwrap()).collect()
}

/// Scales a coefficient list so that its leading numeric coefficient is 1,
/// which keeps pseudo-remainder sequences from growing over the rationals.
fn normalized(coeffs: Vec<Poly>) -> Vec<Poly> {
    let Some(inv) = coeffs.last().and_then(|c| c.leading_coefficient().inv()) else {
        return coeffs;
    };
    if inv.is_one() {
        return coeffs;
    }
    coeffs.iter().map(|c| c.scale(&inv)).collect()
}

/// Pseudo-remainder of univariate polynomials with polynomial coefficients.
fn pseudo_remainder(f: &[Poly], g: &[Poly]) -> Vec<Poly> {
    let mut r: Vec<Poly> = f.to_vec();
    trim(&mut r);
    let dg = g.len() - 1;
    let lg = &g[dg];
    while !r.is_empty() && r.len() > dg {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - dg;
        let mut next: Vec<Poly> = r.iter().map(|c| c.mul(lg)).collect();
        for (k, gc) in g.iter().enumerate() {
            next[k + shift] = next[k + shift].sub(&gc.mul(&lr));
        }
        trim(&mut next);
        r = next;
    }
    r
}

impl fmt::Display for Poly {
    /// Terms in descending lexicographic order, parseable by the expression grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_real() && c.re() < &BigRational::zero();
            let mag = if negative { -c } else { c.clone() };
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl From<i64> for Poly {
    fn from(v: i64) -> Self {
        Poly::constant(GaussianRational::from_int(v))
    }
}

#[allow(dead_code)]
pub(crate) fn int(v: i64) -> GaussianRational {
    GaussianRational::real(BigRational::from_integer(BigInt::from(v)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: u32) -> Poly {
        Poly::var(EvenVar::X(i))
    }

    #[test]
    fn lex_order_prefers_earlier_variables() {
        let a = Monomial::var(EvenVar::X(1), 1);
        let b = Monomial::var(EvenVar::X(2), 5);
        assert!(a > b);
        assert!(Monomial::var(EvenVar::X(1), 2) > a);
        assert!(a > Monomial::one());
    }

    #[test]
    fn exact_division() {
        let p = x(1).add(&x(2));
        let q = x(1).sub(&x(2)).add(&Poly::from(3));
        let prod = p.mul(&q);
        assert_eq!(prod.div_exact(&p), Some(q.clone()));
        assert_eq!(prod.div_exact(&q), Some(p));
        assert_eq!(x(1).div_exact(&x(2)), None);
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let common = x(1).mul(&x(2)).add(&Poly::from(1));
        let a = common.mul(&x(1).add(&x(3)));
        let b = common.mul(&x(2).sub(&Poly::from(2))).mul(&x(1));
        assert_eq!(a.gcd(&b), common.monic());
        assert_eq!(x(1).gcd(&x(2)), Poly::one());
        let sq = x(1).add(&Poly::from(1)).pow(2);
        assert_eq!(sq.gcd(&x(1).add(&Poly::from(1))), x(1).add(&Poly::from(1)));
    }

    #[test]
    fn sqrt_of_perfect_square() {
        let r = x(1).scale(&int(2)).sub(&x(2)).add(&Poly::from(3));
        assert_eq!(r.mul(&r).sqrt(), Some(r));
        assert_eq!(x(1).sqrt(), None);
        assert_eq!(x(1).add(&Poly::from(1)).sqrt(), None);
        assert_eq!(Poly::from(4).sqrt(), Some(Poly::from(2)));
    }
}
