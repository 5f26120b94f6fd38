//! Dense exact matrices with fraction-free elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Rational>>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![vec![Rational::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Rational::one();
        }
        m
    }

    /// Builds from row vectors; `cols` is needed when `rows` is empty.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Result<Self> {
        for r in &rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
        }
        Ok(RationalMatrix {
            rows: rows.len(),
            cols,
            data: rows,
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .map(|r| r.iter().map(|&v| Rational::from_integer(v.into())).collect())
            .collect();
        RationalMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rational) {
        self.data[r][c] = value;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r]
    }

    pub fn row_vectors(&self) -> &[Vec<Rational>] {
        &self.data
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        self.data.iter().map(|r| r[c].clone()).collect()
    }

    pub fn transpose(&self) -> RationalMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension mismatch");
        self.data
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k][j];
                    if !b.is_zero() {
                        out.data[i][j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Reduced row echelon form and its pivot columns. Zero rows are dropped.
    pub fn rref(&self) -> (RationalMatrix, Vec<usize>) {
        let mut int_rows: Vec<Vec<BigInt>> = self
            .data
            .iter()
            .map(|r| integer_row(r))
            .filter(|r| r.iter().any(|v| !v.is_zero()))
            .collect();
        let pivots = bareiss_echelon(&mut int_rows, self.cols);
        let rank = pivots.len();
        let mut reduced: Vec<Vec<Rational>> = int_rows
            .into_iter()
            .take(rank)
            .enumerate()
            .map(|(i, row)| {
                let p = row[pivots[i]].clone();
                row.into_iter()
                    .map(|v| Rational::new(v, p.clone()))
                    .collect()
            })
            .collect();
        for i in (0..rank).rev() {
            let pc = pivots[i];
            let (upper, lower) = reduced.split_at_mut(i);
            let pivot_row = &lower[0];
            for row in upper.iter_mut() {
                let factor = row[pc].clone();
                if factor.is_zero() {
                    continue;
                }
                for j in pc..self.cols {
                    if !pivot_row[j].is_zero() {
                        let delta = &factor * &pivot_row[j];
                        row[j] -= delta;
                    }
                }
            }
        }
        (
            RationalMatrix {
                rows: rank,
                cols: self.cols,
                data: reduced,
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        let mut int_rows: Vec<Vec<BigInt>> = self.data.iter().map(|r| integer_row(r)).collect();
        bareiss_echelon(&mut int_rows, self.cols).len()
    }

    /// Exact nullspace basis, returned in reduced row echelon form.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r.data[i][free].clone();
            }
            basis.push(v);
        }
        if basis.is_empty() {
            return basis;
        }
        let k = RationalMatrix {
            rows: basis.len(),
            cols: self.cols,
            data: basis,
        };
        k.rref().0.data
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<RationalMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.data[i][j] = self.data[i][j].clone();
            }
            aug.data[i][n + i] = Rational::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.data[i][j] = r.data[i][n + j].clone();
            }
        }
        Some(inv)
    }

    /// Solves `self * x = b` for square invertible `self`.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        self.inverse().map(|inv| inv.mul_vec(b))
    }
}

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .filter(|v| !v.is_zero())
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    row.iter()
        .map(|v| {
            if v.is_zero() {
                BigInt::zero()
            } else {
                v.numer() * (&lcm / v.denom())
            }
        })
        .collect()
}

/// Fraction-free (Bareiss) forward elimination. Rows are permuted so that the
/// first `rank` rows are the pivot rows; returns the pivot columns. Every
/// division performed is exact.
fn bareiss_echelon(a: &mut [Vec<BigInt>], cols: usize) -> Vec<usize> {
    let rows = a.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, bottom) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = &pivot_row[c];
        for row in bottom.iter_mut() {
            let lead = row[c].clone();
            for j in c + 1..cols {
                let v = pivot * &row[j] - &lead * &pivot_row[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
            row[c] = BigInt::zero();
        }
        prev = pivot.clone();
        pivots.push(c);
        r += 1;
    }
    pivots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{int, rat};

    #[test]
    fn identity_has_trivial_kernel() {
        assert!(RationalMatrix::identity(4).kernel_basis().is_empty());
    }

    #[test]
    fn zero_matrix_has_full_kernel() {
        let k = RationalMatrix::zeros(2, 2).kernel_basis();
        assert_eq!(k, vec![vec![int(1), int(0)], vec![int(0), int(1)]]);
    }

    #[test]
    fn rank_one_kernel() {
        let m = RationalMatrix::from_i64(&[&[1, 1], &[2, 2]]);
        assert_eq!(m.kernel_basis(), vec![vec![int(1), int(-1)]]);
    }

    #[test]
    fn rref_with_fractions() {
        let m = RationalMatrix::from_rows(
            3,
            vec![
                vec![rat(1, 2), int(1), int(0)],
                vec![int(1), int(3), rat(1, 3)],
                vec![int(0), int(1), rat(1, 3)],
            ],
        )
        .unwrap();
        let (r, pivots) = m.rref();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(r.row(0), &[int(1), int(0), rat(-2, 3)]);
        assert_eq!(r.row(1), &[int(0), int(1), rat(1, 3)]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = RationalMatrix::from_i64(&[&[2, 1, 0], &[0, 1, 3], &[1, 0, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), RationalMatrix::identity(3));
        assert!(RationalMatrix::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }
}
