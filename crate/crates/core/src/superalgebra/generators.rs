use std::fmt;

use smallvec::SmallVec;

use crate::scalar::EvenVar;

/// Kind of an odd generator; the declaration order is the generator order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OddKind {
    /// Odd Darboux coordinate `θ_i`.
    Theta,
    /// Odd fiber coordinate of ΠTM, i.e. the differential `dx^i`.
    Xi,
    /// Odd fiber coordinate of a cotangent bundle, conjugate to base coordinate `i`.
    Fiber,
    /// External odd parameter ("odd modulus").
    Eps,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OddGen {
    pub kind: OddKind,
    pub index: u32,
}

impl OddGen {
    pub const fn theta(i: u32) -> Self {
        OddGen { kind: OddKind::Theta, index: i }
    }
    pub const fn xi(i: u32) -> Self {
        OddGen { kind: OddKind::Xi, index: i }
    }
    pub const fn fiber(i: u32) -> Self {
        OddGen { kind: OddKind::Fiber, index: i }
    }
    pub const fn eps(i: u32) -> Self {
        OddGen { kind: OddKind::Eps, index: i }
    }
}

impl fmt::Display for OddGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.kind {
            OddKind::Theta => "th",
            OddKind::Xi => "xi",
            OddKind::Fiber => "ps",
            OddKind::Eps => "eps",
        };
        write!(f, "{prefix}{}", self.index)
    }
}

/// A coordinate or parameter that functions can be differentiated by or
/// substituted for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coord {
    Even(EvenVar),
    Odd(OddGen),
}

impl Coord {
    pub fn x(i: u32) -> Self {
        Coord::Even(EvenVar::X(i))
    }
    pub fn theta(i: u32) -> Self {
        Coord::Odd(OddGen::theta(i))
    }
    pub fn is_odd(&self) -> bool {
        matches!(self, Coord::Odd(_))
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coord::Even(v) => write!(f, "{v}"),
            Coord::Odd(g) => write!(f, "{g}"),
        }
    }
}

/// Ordered product of distinct odd generators, the basis of the Grassmann algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ThetaMonomial(SmallVec<[OddGen; 6]>);

impl ThetaMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn single(g: OddGen) -> Self {
        ThetaMonomial(smallvec::smallvec![g])
    }

    /// Sorts `gens` into canonical order, returning the sign of the
    /// permutation, or `None` if a generator repeats.
    pub fn from_product(gens: &[OddGen]) -> Option<(i8, Self)> {
        let mut v: SmallVec<[OddGen; 6]> = gens.iter().copied().collect();
        let mut sign = 1i8;
        // insertion sort, counting transpositions
        for i in 1..v.len() {
            let mut j = i;
            while j > 0 && v[j - 1] > v[j] {
                v.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if v.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((sign, ThetaMonomial(v)))
    }

    pub fn gens(&self) -> &[OddGen] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_odd(&self) -> bool {
        self.0.len() % 2 == 1
    }

    pub fn contains(&self, g: OddGen) -> bool {
        self.0.binary_search(&g).is_ok()
    }

    pub fn position(&self, g: OddGen) -> Option<usize> {
        self.0.binary_search(&g).ok()
    }

    pub fn count_kind(&self, kind: OddKind) -> usize {
        self.0.iter().filter(|g| g.kind == kind).count()
    }

    /// Product `self · other` with its Koszul sign, or `None` if they share a generator.
    pub fn mul(&self, other: &ThetaMonomial) -> Option<(i8, ThetaMonomial)> {
        let (a, b) = (&self.0, &other.0);
        let mut out: SmallVec<[OddGen; 6]> = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let mut swaps = 0usize;
        while i < a.len() && j < b.len() {
            if a[i] == b[j] {
                return None;
            }
            if a[i] < b[j] {
                out.push(a[i]);
                i += 1;
            } else {
                // b[j] jumps over the remaining a's
                swaps += a.len() - i;
                out.push(b[j]);
                j += 1;
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Some((if swaps.is_multiple_of(2) { 1 } else { -1 }, ThetaMonomial(out)))
    }

    /// Removes `g`; the sign is that of moving `g` to the front (left derivative).
    pub fn remove_left(&self, g: OddGen) -> Option<(i8, ThetaMonomial)> {
        let k = self.position(g)?;
        let mut v = self.0.clone();
        v.remove(k);
        Some((if k % 2 == 0 { 1 } else { -1 }, ThetaMonomial(v)))
    }

    /// Removes `g`; the sign is that of moving `g` to the back (right derivative).
    pub fn remove_right(&self, g: OddGen) -> Option<(i8, ThetaMonomial)> {
        let k = self.position(g)?;
        let after = self.0.len() - 1 - k;
        let mut v = self.0.clone();
        v.remove(k);
        Some((if after.is_multiple_of(2) { 1 } else { -1 }, ThetaMonomial(v)))
    }

    /// Writes `self = sign · block · rest` where `block` is the ascending
    /// product of `subset`; `None` if some generator of `subset` is missing.
    pub fn split_left(&self, subset: &[OddGen]) -> Option<(i8, ThetaMonomial)> {
        let mut sign = 1i8;
        let mut rest = self.clone();
        // m = s₁ g₁ r₁ = s₁ s₂ g₁ g₂ r₂ = ...
        for g in subset {
            let (s, r) = rest.remove_left(*g)?;
            sign *= s;
            rest = r;
        }
        Some((sign, rest))
    }
}

impl fmt::Display for ThetaMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, g) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn th(i: u32) -> OddGen {
        OddGen::theta(i)
    }

    #[test]
    fn koszul_signs() {
        let a = ThetaMonomial::single(th(2));
        let b = ThetaMonomial::single(th(1));
        let (s, m) = a.mul(&b).unwrap();
        assert_eq!(s, -1);
        assert_eq!(m.gens(), &[th(1), th(2)]);
        assert!(a.mul(&a).is_none());
        let (s, _) = ThetaMonomial::from_product(&[th(3), th(1), th(2)]).unwrap();
        assert_eq!(s, 1);
        let (s, _) = ThetaMonomial::from_product(&[th(3), th(2), th(1)]).unwrap();
        assert_eq!(s, -1);
    }

    #[test]
    fn split_left_extracts_block() {
        // th1 th2 eps1 = sign · (th1 th2) · eps1 with sign +1
        let (_, m) = ThetaMonomial::from_product(&[th(1), th(2), OddGen::eps(1)]).unwrap();
        let (s, rest) = m.split_left(&[th(1), th(2)]).unwrap();
        assert_eq!(s, 1);
        assert_eq!(rest.gens(), &[OddGen::eps(1)]);
        // th1 xi1 th2 stored as th1 th2 xi1; xi1 · rest
        let (_, m) = ThetaMonomial::from_product(&[th(1), th(2), OddGen::xi(1)]).unwrap();
        let (s, rest) = m.split_left(&[OddGen::xi(1)]).unwrap();
        assert_eq!(s, 1);
        assert_eq!(rest.gens(), &[th(1), th(2)]);
    }
}
