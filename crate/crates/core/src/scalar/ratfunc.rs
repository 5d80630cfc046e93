//! Reduced rational functions over ℚ(i): the even coefficient field.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gauss::GaussianRational;
use super::poly::{EvenVar, Monomial, Poly};
use crate::error::{Error, Result};

/// An exact rational function `num / den`.
///
/// Always reduced: `gcd(num, den) = 1` and `den` is monic in the
/// lexicographic order, so structural equality is mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Scalar { num: Poly::one(), den: Poly::one() }
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_poly(Poly::from(v))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::constant(GaussianRational::from_ratio(n, d))
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn i() -> Self {
        Self::constant(GaussianRational::i())
    }

    pub fn var(v: EvenVar) -> Self {
        Self::from_poly(Poly::var(v))
    }

    pub fn x(i: u32) -> Self {
        Self::var(EvenVar::X(i))
    }

    pub fn hbar() -> Self {
        Self::var(EvenVar::Hbar)
    }

    pub fn from_poly(p: Poly) -> Self {
        Scalar { num: p, den: Poly::one() }
    }

    /// Builds `num / den` in reduced form.
    pub fn from_parts(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::NotInvertible("zero denominator".into()));
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if let Some(c) = den.constant_value() {
            if c.is_one() {
                return Scalar { num, den };
            }
            return Scalar { num: num.scale(&c.inv().unwrap()), den: Poly::one() };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        let lc = den.leading_coefficient();
        if lc.is_one() {
            Scalar { num, den }
        } else {
            let inv = lc.inv().unwrap();
            Scalar { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn constant_value(&self) -> Option<GaussianRational> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn contains_var(&self, v: EvenVar) -> bool {
        self.num.contains_var(v) || self.den.contains_var(v)
    }

    pub fn vars(&self) -> std::collections::BTreeSet<EvenVar> {
        let mut vs = self.num.vars();
        vs.extend(self.den.vars());
        vs
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::NotInvertible("zero scalar".into()));
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Scalar { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(Scalar { num: base.num.pow(k), den: base.den.pow(k) })
    }

    pub fn derivative(&self, v: EvenVar) -> Self {
        if !self.contains_var(v) {
            return Self::zero();
        }
        if self.den.is_one() {
            return Self::from_poly(self.num.derivative(v));
        }
        let num = self.num.derivative(v).mul(&self.den).sub(&self.num.mul(&self.den.derivative(v)));
        Self::reduce(num, self.den.mul(&self.den))
    }

    /// Exact square root with a normalized (positive-leading) numerator.
    pub fn sqrt(&self) -> Option<Self> {
        let n = self.num.sqrt()?;
        let d = self.den.sqrt()?;
        Some(Self::reduce(n, d))
    }

    /// Evaluates with the substitution `v ↦ value(v)` for every variable for
    /// which `value` returns `Some`; other variables are kept.
    pub fn substitute(&self, value: &dyn Fn(EvenVar) -> Option<Scalar>) -> Result<Self> {
        let vars = self.vars();
        if vars.iter().all(|v| value(*v).is_none()) {
            return Ok(self.clone());
        }
        let num = eval_poly(&self.num, value);
        let den = eval_poly(&self.den, value);
        if den.is_zero() {
            return Err(Error::NotInvertible(format!("denominator {} vanishes after substitution", self.den)));
        }
        Ok(&num / &den)
    }

    /// Leading term (by lexicographic order) of the numerator divided by the
    /// denominator's leading term; a cheap sign/shape handle for normalization.
    pub fn leading_coefficient(&self) -> GaussianRational {
        self.num.leading_coefficient()
    }
}

fn eval_poly(p: &Poly, value: &dyn Fn(EvenVar) -> Option<Scalar>) -> Scalar {
    let mut cache: std::collections::HashMap<(EvenVar, u32), Scalar> = Default::default();
    let mut total = Scalar::zero();
    for (m, c) in p.terms() {
        let mut kept = Monomial::one();
        let mut factor = Scalar::constant(c.clone());
        for &(v, e) in m.pairs() {
            match value(v) {
                Some(val) => {
                    let pw = cache
                        .entry((v, e))
                        .or_insert_with(|| Scalar { num: val.num.pow(e), den: val.den.pow(e) })
                        .clone();
                    factor = &factor * &pw;
                }
                None => kept = kept.mul(&Monomial::var(v, e)),
            }
        }
        if !kept.is_one() {
            factor = &factor * &Scalar::from_poly(Poly::from_terms([(kept, GaussianRational::one())]));
        }
        total = &total + &factor;
    }
    total
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            if self.den.is_one() {
                return Scalar::from_poly(self.num.add(&rhs.num));
            }
            return Scalar::reduce(self.num.add(&rhs.num), self.den.clone());
        }
        // with g = gcd(d1, d2), any common factor of the sum and d1·d2/g divides g
        let g = self.den.gcd(&rhs.den);
        let d1 = self.den.div_exact(&g).unwrap();
        let d2 = rhs.den.div_exact(&g).unwrap();
        let num = self.num.mul(&d2).add(&rhs.num.mul(&d1));
        if num.is_zero() {
            return Scalar::zero();
        }
        let h = num.gcd(&g);
        let (num, g) = if h.is_one() { (num, g) } else { (num.div_exact(&h).unwrap(), g.div_exact(&h).unwrap()) };
        let den = d1.mul(&d2).mul(&g);
        let lc = den.leading_coefficient();
        if lc.is_one() {
            Scalar { num, den }
        } else {
            let inv = lc.inv().unwrap();
            Scalar { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar::from_poly(self.num.mul(&rhs.num));
        }
        // cross-cancel before multiplying
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = rhs.den.div_exact(&g1).unwrap();
        let n2 = rhs.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        let num = n1.mul(&n2);
        let den = d1.mul(&d2);
        let lc = den.leading_coefficient();
        if lc.is_one() {
            Scalar { num, den }
        } else {
            let inv = lc.inv().unwrap();
            Scalar { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    /// Panics on division by zero; use [`Scalar::inv`] for a fallible path.
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv().expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { num: self.num.neg(), den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::one()
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_int(v)
    }
}

impl From<GaussianRational> for Scalar {
    fn from(c: GaussianRational) -> Self {
        Scalar::constant(c)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
