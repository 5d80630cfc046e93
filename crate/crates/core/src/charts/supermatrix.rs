//! Even-block square supermatrices and their Berezinians.

use std::fmt;

use crate::error::{Error, Result};
use crate::superalgebra::{ChartId, SuperFunction};

/// A `(p|q) × (p|q)` matrix of functions. Rows and columns list the `p` even
/// indices first; the diagonal blocks `A`, `D` have even entries and the
/// off-diagonal blocks `B`, `C` odd entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperMatrix {
    even: usize,
    odd: usize,
    chart: ChartId,
    entries: Vec<Vec<SuperFunction>>,
}

impl SuperMatrix {
    pub fn new(even: usize, odd: usize, entries: Vec<Vec<SuperFunction>>) -> Result<Self> {
        let size = even + odd;
        if entries.len() != size || entries.iter().any(|r| r.len() != size) {
            return Err(Error::Precondition(format!("expected a {size}×{size} matrix")));
        }
        let chart = entries.first().and_then(|r| r.first()).map(|e| e.chart()).unwrap_or_default();
        for (i, row) in entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if e.chart() != chart {
                    return Err(Error::ChartMismatch(e.chart().0, chart.0));
                }
                let want_odd = (i < even) != (j < even);
                let ok = if want_odd { e.is_odd() } else { e.is_even() };
                if !ok {
                    return Err(Error::ParityMismatch(format!("entry ({i},{j}) breaks the block parity structure")));
                }
            }
        }
        Ok(SuperMatrix { even, odd, chart, entries })
    }

    pub fn identity(even: usize, odd: usize, chart: ChartId) -> Self {
        let size = even + odd;
        let entries = (0..size)
            .map(|i| {
                (0..size)
                    .map(|j| SuperFunction::int((i == j) as i64).in_chart(chart))
                    .collect()
            })
            .collect();
        SuperMatrix { even, odd, chart, entries }
    }

    pub fn even_dim(&self) -> usize {
        self.even
    }

    pub fn odd_dim(&self) -> usize {
        self.odd
    }

    pub fn entry(&self, i: usize, j: usize) -> &SuperFunction {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<SuperFunction>] {
        &self.entries
    }

    fn block(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Vec<Vec<SuperFunction>> {
        rows.map(|i| self.entries[i][cols.clone()].to_vec()).collect()
    }

    pub fn mul(&self, other: &SuperMatrix) -> Result<SuperMatrix> {
        if self.even != other.even || self.odd != other.odd {
            return Err(Error::Precondition("supermatrix dimensions differ".into()));
        }
        let entries = mat_mul(&self.entries, &other.entries)?;
        SuperMatrix::new(self.even, self.odd, entries)
    }

    /// `Ber = det(A - B D⁻¹ C) · det(D)⁻¹`.
    pub fn berezinian(&self) -> Result<SuperFunction> {
        let (p, q) = (self.even, self.odd);
        let d = self.block(p..p + q, p..p + q);
        let det_d = det_even(&d, self.chart);
        if det_d.body().is_zero() {
            return Err(Error::SingularBlock);
        }
        let det_d_inv = det_d.invert()?;
        let a = self.block(0..p, 0..p);
        if p == 0 {
            return Ok(det_d_inv);
        }
        let schur = if q == 0 {
            a
        } else {
            let b = self.block(0..p, p..p + q);
            let c = self.block(p..p + q, 0..p);
            let d_inv = inverse_even(&d, self.chart)?;
            let bdc = mat_mul(&mat_mul(&b, &d_inv)?, &c)?;
            a.iter()
                .zip(&bdc)
                .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x - y).collect())
                .collect()
        };
        det_even(&schur, self.chart).try_mul(&det_d_inv)
    }
}

impl fmt::Display for SuperMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

pub(crate) fn mat_mul(a: &[Vec<SuperFunction>], b: &[Vec<SuperFunction>]) -> Result<Vec<Vec<SuperFunction>>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    let mut out = Vec::with_capacity(a.len());
    for row in a {
        if row.len() != inner {
            return Err(Error::Precondition("matrix shapes do not match".into()));
        }
        let mut r = Vec::with_capacity(cols);
        for j in 0..cols {
            let mut acc = SuperFunction::zero().in_chart(row.first().map_or_else(Default::default, |e| e.chart()));
            for k in 0..inner {
                acc = acc.try_add(&row[k].try_mul(&b[k][j])?)?;
            }
            r.push(acc);
        }
        out.push(r);
    }
    Ok(out)
}

/// Determinant of a square matrix with even (hence commuting) entries, by
/// cofactor expansion along the first row.
pub fn det_even(m: &[Vec<SuperFunction>], chart: ChartId) -> SuperFunction {
    match m.len() {
        0 => SuperFunction::one().in_chart(chart),
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        n => {
            let mut acc = SuperFunction::zero().in_chart(chart);
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let term = &m[0][j] * &det_even(&minor(m, 0, j), chart);
                acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

fn minor(m: &[Vec<SuperFunction>], row: usize, col: usize) -> Vec<Vec<SuperFunction>> {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != row)
        .map(|(_, r)| r.iter().enumerate().filter(|(j, _)| *j != col).map(|(_, e)| e.clone()).collect())
        .collect()
}

/// Inverse of an even-entry matrix as `adj(M) / det(M)`.
pub fn inverse_even(m: &[Vec<SuperFunction>], chart: ChartId) -> Result<Vec<Vec<SuperFunction>>> {
    let n = m.len();
    let det_inv = det_even(m, chart).invert().map_err(|_| Error::SingularBlock)?;
    if n == 1 {
        return Ok(vec![vec![det_inv]]);
    }
    let mut out = vec![vec![SuperFunction::zero().in_chart(chart); n]; n];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            // (M⁻¹)_{ij} = (-1)^{i+j} det(minor_{ji}) / det M
            let c = det_even(&minor(m, j, i), chart).try_mul(&det_inv)?;
            *cell = if (i + j) % 2 == 0 { c } else { -c };
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sf(v: i64) -> SuperFunction {
        SuperFunction::int(v)
    }

    #[test]
    fn diagonal_berezinian() {
        let m = SuperMatrix::new(1, 1, vec![vec![sf(2), SuperFunction::zero()], vec![SuperFunction::zero(), SuperFunction::ratio(1, 2)]]).unwrap();
        assert_eq!(m.berezinian().unwrap(), sf(4));
        assert_eq!(SuperMatrix::identity(2, 2, ChartId(0)).berezinian().unwrap(), sf(1));
    }

    #[test]
    fn odd_blocks_enter_through_schur_complement() {
        // [[1, e1], [e2, 1]]: Ber = (1 - e1 e2) / 1
        let e1 = SuperFunction::eps(1);
        let e2 = SuperFunction::eps(2);
        let m = SuperMatrix::new(1, 1, vec![vec![sf(1), e1.clone()], vec![e2.clone(), sf(1)]]).unwrap();
        assert_eq!(m.berezinian().unwrap(), &sf(1) - &(&e1 * &e2));
    }

    #[test]
    fn inverse_and_determinant() {
        let x = SuperFunction::x(1);
        let m = vec![vec![x.clone(), sf(1), sf(0)], vec![sf(0), sf(2), sf(1)], vec![sf(1), sf(0), sf(3)]];
        let det = det_even(&m, ChartId(0));
        assert_eq!(det, &x.scale_int(6) + &sf(1));
        let inv = inverse_even(&m, ChartId(0)).unwrap();
        let prod = mat_mul(&m, &inv).unwrap();
        for (i, row) in prod.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                assert_eq!(*e, sf((i == j) as i64));
            }
        }
    }

    #[test]
    fn rejects_bad_parity_and_singular_d() {
        let th = SuperFunction::theta(1);
        assert!(SuperMatrix::new(1, 1, vec![vec![th.clone(), sf(0)], vec![sf(0), sf(1)]]).is_err());
        let m = SuperMatrix::new(1, 1, vec![vec![sf(1), sf(0)], vec![sf(0), sf(0)]]).unwrap();
        assert_eq!(m.berezinian(), Err(Error::SingularBlock));
    }
}
