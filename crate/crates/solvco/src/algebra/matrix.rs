//! Exact dense linear algebra over the Gaussian rationals and over `ℚ`.
//!
//! Ranks and determinants go through fraction-free (Bareiss-style) forward
//! elimination; kernels and linear solves use reduced row echelon form over
//! the field.  Both are exact; the property tests cross-check them via
//! rank–nullity.

use num_traits::Zero;

use crate::error::{Error, Result};

use super::gaussian::Gaussian;
use super::laurent::Laurent;
use super::rational::Rational;

/// A dense matrix over `ℚ(i)`, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussianMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Gaussian>,
}

impl GaussianMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        GaussianMatrix {
            rows,
            cols,
            data: vec![Gaussian::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = GaussianMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Gaussian::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Gaussian>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::invalid("GaussianMatrix::from_rows", "ragged rows"));
        }
        Ok(GaussianMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Build from column vectors (all of the same height).
    pub fn from_columns(columns: &[Vec<Gaussian>]) -> Result<Self> {
        let c = columns.len();
        let r = columns.first().map_or(0, Vec::len);
        if columns.iter().any(|col| col.len() != r) {
            return Err(Error::invalid(
                "GaussianMatrix::from_columns",
                "ragged columns",
            ));
        }
        let mut m = GaussianMatrix::zeros(r, c);
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Gaussian {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Gaussian) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<Gaussian> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hstack(&self, rhs: &GaussianMatrix) -> Result<Self> {
        if self.rows != rhs.rows {
            return Err(Error::invalid(
                "GaussianMatrix::hstack",
                format!("row counts differ: {} vs {}", self.rows, rhs.rows),
            ));
        }
        let mut m = GaussianMatrix::zeros(self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..rhs.cols {
                m.set(i, self.cols + j, rhs.get(i, j).clone());
            }
        }
        Ok(m)
    }

    pub fn mul(&self, rhs: &GaussianMatrix) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::invalid(
                "GaussianMatrix::mul",
                format!("inner dimensions differ: {} vs {}", self.cols, rhs.rows),
            ));
        }
        let mut out = GaussianMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = Gaussian::zero();
                for k in 0..self.cols {
                    acc += &(self.get(i, k) * rhs.get(k, j));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Gaussian]) -> Result<Vec<Gaussian>> {
        if v.len() != self.cols {
            return Err(Error::invalid(
                "GaussianMatrix::mul_vec",
                format!("vector length {} vs {} columns", v.len(), self.cols),
            ));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = Gaussian::zero();
                for (j, entry) in v.iter().enumerate() {
                    acc += &(self.get(i, j) * entry);
                }
                acc
            })
            .collect())
    }

    pub fn transpose(&self) -> Self {
        let mut out = GaussianMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Rank by fraction-free forward elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let at = |m: &Vec<Gaussian>, i: usize, j: usize| m[i * cols + j].clone();
        let mut prev = Gaussian::one();
        let mut rank = 0;
        let mut pivot_col = 0;
        while rank < rows && pivot_col < cols {
            // Find a pivot in this column at or below `rank`.
            let pivot_row = (rank..rows).find(|&i| !at(&m, i, pivot_col).is_zero());
            let Some(pivot_row) = pivot_row else {
                pivot_col += 1;
                continue;
            };
            if pivot_row != rank {
                for j in 0..cols {
                    m.swap(rank * cols + j, pivot_row * cols + j);
                }
            }
            let pivot = at(&m, rank, pivot_col);
            for i in rank + 1..rows {
                let factor = at(&m, i, pivot_col);
                for j in pivot_col..cols {
                    // Bareiss update: (p·a_ij − f·a_kj) / prev, exact.
                    let num = &(&pivot * &at(&m, i, j)) - &(&factor * &at(&m, rank, j));
                    m[i * cols + j] = num.div(&prev).expect("Bareiss previous pivot is nonzero");
                }
            }
            prev = pivot;
            rank += 1;
            pivot_col += 1;
        }
        rank
    }

    /// Determinant of a square matrix by Bareiss elimination.
    pub fn det(&self) -> Result<Gaussian> {
        if self.rows != self.cols {
            return Err(Error::invalid(
                "GaussianMatrix::det",
                format!("matrix is {}×{}", self.rows, self.cols),
            ));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Gaussian::one());
        }
        let mut m = self.data.clone();
        let at = |m: &Vec<Gaussian>, i: usize, j: usize| m[i * n + j].clone();
        let mut prev = Gaussian::one();
        let mut sign = 1i64;
        for k in 0..n {
            if at(&m, k, k).is_zero() {
                let swap = (k + 1..n).find(|&i| !at(&m, i, k).is_zero());
                let Some(swap) = swap else {
                    return Ok(Gaussian::zero());
                };
                for j in 0..n {
                    m.swap(k * n + j, swap * n + j);
                }
                sign = -sign;
            }
            let pivot = at(&m, k, k);
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&pivot * &at(&m, i, j)) - &(&at(&m, i, k) * &at(&m, k, j));
                    m[i * n + j] = num.div(&prev).expect("previous pivot is nonzero");
                }
                m[i * n + k] = Gaussian::zero();
            }
            prev = pivot;
        }
        let d = at(&m, n - 1, n - 1);
        Ok(if sign < 0 { -&d } else { d })
    }

    /// Reduced row echelon form; returns the reduced matrix and pivot columns.
    fn rref(&self) -> (GaussianMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row >= m.rows {
                break;
            }
            let pivot_row = (row..m.rows).find(|&i| !m.get(i, col).is_zero());
            let Some(pivot_row) = pivot_row else { continue };
            if pivot_row != row {
                for j in 0..m.cols {
                    let a = m.get(row, j).clone();
                    let b = m.get(pivot_row, j).clone();
                    m.set(row, j, b);
                    m.set(pivot_row, j, a);
                }
            }
            let inv = m.get(row, col).inverse().expect("pivot entry is nonzero");
            for j in col..m.cols {
                let v = m.get(row, j) * &inv;
                m.set(row, j, v);
            }
            for i in 0..m.rows {
                if i == row || m.get(i, col).is_zero() {
                    continue;
                }
                let factor = m.get(i, col).clone();
                for j in col..m.cols {
                    let v = m.get(i, j) - &(&factor * m.get(row, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    /// Basis of the right kernel `{x : Mx = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<Gaussian>> {
        let (r, pivots) = self.rref();
        let pivot_set: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &p in &pivots {
                v[p] = true;
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free] {
                continue;
            }
            let mut x = vec![Gaussian::zero(); self.cols];
            x[free] = Gaussian::one();
            for (row_idx, &p) in pivots.iter().enumerate() {
                x[p] = -r.get(row_idx, free);
            }
            basis.push(x);
        }
        basis
    }

    /// One exact solution of `Mx = b`, or `None` if inconsistent.
    pub fn solve(&self, b: &[Gaussian]) -> Result<Option<Vec<Gaussian>>> {
        if b.len() != self.rows {
            return Err(Error::invalid(
                "GaussianMatrix::solve",
                format!("rhs length {} vs {} rows", b.len(), self.rows),
            ));
        }
        let rhs = GaussianMatrix::from_columns(&[b.to_vec()])?;
        let augmented = self.hstack(&rhs)?;
        let (r, pivots) = augmented.rref();
        if pivots.contains(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Gaussian::zero(); self.cols];
        for (row_idx, &p) in pivots.iter().enumerate() {
            x[p] = r.get(row_idx, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// Exact inverse of a square matrix, via row reduction of `[M | I]`.
    pub fn inverse(&self) -> Result<GaussianMatrix> {
        if self.rows != self.cols {
            return Err(Error::invalid(
                "GaussianMatrix::inverse",
                format!("matrix is {}×{}", self.rows, self.cols),
            ));
        }
        let augmented = self.hstack(&GaussianMatrix::identity(self.rows))?;
        let (r, pivots) = augmented.rref();
        if pivots.len() != self.rows || pivots.iter().any(|&p| p >= self.cols) {
            return Err(Error::invalid(
                "GaussianMatrix::inverse",
                "matrix is singular".to_string(),
            ));
        }
        let mut out = GaussianMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, r.get(i, self.cols + j).clone());
            }
        }
        Ok(out)
    }
}

/// Fraction-free (Bareiss) row echelon over the Laurent ring.
///
/// Row operations are `(pivot·row_i − factor·row_k) / prev`, which stay in
/// the ring by the Bareiss identity; the nonzero result rows span the same
/// row space over the fraction field `ℚ(i)(λ_1, …)` as the input.
pub fn laurent_row_echelon(mut rows: Vec<Vec<Laurent>>) -> Vec<Vec<Laurent>> {
    rows.retain(|r| r.iter().any(|v| !v.is_zero()));
    if rows.is_empty() {
        return rows;
    }
    let width = rows[0].len();
    assert!(
        rows.iter().all(|r| r.len() == width),
        "laurent_row_echelon: ragged rows"
    );
    let mut prev = Laurent::one();
    let mut rank = 0;
    for col in 0..width {
        if rank >= rows.len() {
            break;
        }
        let Some(pivot_row) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let pivot = rows[rank][col].clone();
        for i in rank + 1..rows.len() {
            let factor = rows[i][col].clone();
            #[allow(clippy::needless_range_loop)]
            for j in col..width {
                let num = pivot.mul(&rows[i][j]).sub(&factor.mul(&rows[rank][j]));
                rows[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss intermediate division is exact");
            }
            debug_assert!(rows[i][..col].iter().all(|entry| entry.is_zero()));
            rows[i][col] = Laurent::zero();
        }
        prev = pivot;
        rank += 1;
    }
    rows.truncate(rank);
    rows
}

/// Rank of a Laurent matrix over the fraction field.
pub fn laurent_rank(rows: &[Vec<Laurent>]) -> usize {
    laurent_row_echelon(rows.to_vec()).len()
}

/// Positive definiteness of a symmetric rational matrix, by exact symmetric
/// elimination: positive definite iff every pivot (without row exchanges) is
/// positive.
#[allow(clippy::needless_range_loop)]
pub fn is_positive_definite(sym: &[Vec<Rational>]) -> Result<bool> {
    let n = sym.len();
    for row in sym {
        if row.len() != n {
            return Err(Error::invalid("is_positive_definite", "matrix not square"));
        }
    }
    for i in 0..n {
        for j in 0..i {
            if sym[i][j] != sym[j][i] {
                return Err(Error::invalid(
                    "is_positive_definite",
                    format!("matrix not symmetric at ({i},{j})"),
                ));
            }
        }
    }
    let mut a: Vec<Vec<Rational>> = sym.to_vec();
    for k in 0..n {
        if a[k][k] <= Rational::zero() {
            return Ok(false);
        }
        for i in k + 1..n {
            let f = &a[i][k] / &a[k][k];
            for j in k..n {
                let delta = &f * &a[k][j];
                a[i][j] -= delta;
            }
        }
    }
    Ok(true)
}
