//! Dense rational matrices with fraction-free elimination.
//!
//! Rank, nullspaces, inverses and determinants go through Bareiss elimination
//! on integer rows (each row scaled by the lcm of its denominators), so no
//! intermediate fraction ever has to be normalized during the forward pass.

use super::rational::{lcm_of_denominators, one, zero, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("shape mismatch: {0}")]
    Shape(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { one() } else { zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Builds a matrix whose j-th column is `columns[j]`.
    pub fn from_columns(columns: &[Vec<Rational>]) -> Self {
        let c = columns.len();
        let r = columns.first().map_or(0, Vec::len);
        Self::from_fn(r, c, |i, j| columns[j][i].clone())
    }

    /// Integer matrix from row-major entries; handy in tests and fixtures.
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Self::from_fn(rows, cols, |i, j| Rational::from_integer(entries[i * cols + j].into()))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<Rational> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Rational>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| c * x).collect() }
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                row.iter().zip(v).fold(zero(), |acc, (a, b)| if a.is_zero() { acc } else { acc + a * b })
            })
            .collect()
    }

    /// Bilinear form `x^T M y`.
    pub fn bilinear(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let my = self.apply(y);
        x.iter().zip(&my).fold(zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..=i).all(|j| *self.get(i, j) == -self.get(j, i)))
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &Matrix) -> Matrix {
        &(self * other) - &(other * self)
    }

    /// 2x2 block matrix `[[a, b], [c, d]]`.
    pub fn block(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Matrix {
        let (r0, c0) = (a.rows, a.cols);
        assert!(b.rows == r0 && c.cols == c0 && d.rows == c.rows && d.cols == b.cols);
        Self::from_fn(r0 + c.rows, c0 + b.cols, |i, j| match (i < r0, j < c0) {
            (true, true) => a.get(i, j).clone(),
            (true, false) => b.get(i, j - c0).clone(),
            (false, true) => c.get(i - r0, j).clone(),
            (false, false) => d.get(i - r0, j - c0).clone(),
        })
    }

    pub fn sub_block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        Self::from_fn(rows, cols, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                let l = lcm_of_denominators(row.iter());
                row.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect()
            })
            .collect()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut rows = self.integer_rows();
        let pivots = bareiss_echelon(&mut rows, self.cols);
        let mut out: Vec<Vec<Rational>> = rows
            .into_iter()
            .map(|r| r.into_iter().map(Rational::from_integer).collect())
            .collect();
        for (r, &c) in pivots.iter().enumerate().rev() {
            let p = out[r][c].clone();
            for x in out[r].iter_mut() {
                *x /= &p;
            }
            let pivot_row = out[r].clone();
            for row in out.iter_mut().take(r) {
                let f = row[c].clone();
                if f.is_zero() {
                    continue;
                }
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        for row in out.iter_mut().skip(pivots.len()) {
            for x in row.iter_mut() {
                *x = zero();
            }
        }
        let m = if out.is_empty() { Matrix::zeros(0, self.cols) } else { Matrix::from_rows(out) };
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.integer_rows();
        bareiss_echelon(&mut rows, self.cols).len()
    }

    /// Basis of `{x : self * x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![zero(); self.cols];
                v[f] = one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(row, f).clone();
                }
                v
            })
            .collect()
    }

    /// A particular solution of `self * X = rhs` (free variables set to zero),
    /// or `None` when the system is inconsistent.
    pub fn solve(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(rhs.rows, self.rows);
        let aug = Matrix::block_row(self, rhs);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.cols, rhs.cols);
        for (row, &pc) in pivots.iter().enumerate() {
            for k in 0..rhs.cols {
                x.set(pc, k, r.get(row, self.cols + k).clone());
            }
        }
        Some(x)
    }

    fn block_row(a: &Matrix, b: &Matrix) -> Matrix {
        Self::from_fn(a.rows, a.cols + b.cols, |i, j| {
            if j < a.cols { a.get(i, j).clone() } else { b.get(i, j - a.cols).clone() }
        })
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let (r, pivots) = Matrix::block_row(self, &Matrix::identity(n)).rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.sub_block(0, n, n, n))
    }

    pub fn determinant(&self) -> Rational {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return one();
        }
        let mut scale = BigInt::one();
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for i in 0..n {
            let row = &self.data[i * n..(i + 1) * n];
            let l = lcm_of_denominators(row.iter());
            rows.push(row.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect());
            scale *= l;
        }
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !rows[i][k].is_zero()) else {
                return zero();
            };
            if p != k {
                rows.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&rows[k][k] * &rows[i][j] - &rows[i][k] * &rows[k][j]) / &prev;
                    rows[i][j] = v;
                }
                rows[i][k] = BigInt::zero();
            }
            prev = rows[k][k].clone();
        }
        Rational::new(prev * sign, scale)
    }

    /// Sylvester's criterion: all leading principal minors strictly positive.
    ///
    /// Bareiss elimination without row exchanges produces the leading
    /// principal minors (of the row-scaled matrix) as its successive pivots;
    /// positive row scaling does not change their signs.
    pub fn is_positive_definite(&self) -> Result<bool, MatrixError> {
        if !self.is_symmetric() {
            return Err(MatrixError::NotSymmetric);
        }
        let n = self.rows;
        let mut rows = self.integer_rows();
        let mut prev = BigInt::one();
        for k in 0..n {
            if !rows[k][k].is_positive() {
                return Ok(false);
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&rows[k][k] * &rows[i][j] - &rows[i][k] * &rows[k][j]) / &prev;
                    rows[i][j] = v;
                }
                rows[i][k] = BigInt::zero();
            }
            prev = rows[k][k].clone();
        }
        Ok(true)
    }

    /// Column space basis (the pivot columns of `self`).
    pub fn column_space(&self) -> Vec<Vec<Rational>> {
        let (_, pivots) = self.rref();
        pivots.iter().map(|&c| self.column(c)).collect()
    }
}

/// In-place fraction-free row echelon form restricted to the first
/// `pivot_cols` columns; returns the pivot columns.
fn bareiss_echelon(rows: &mut [Vec<BigInt>], pivot_cols: usize) -> Vec<usize> {
    let m = rows.len();
    let width = rows.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(p, r);
        for i in r + 1..m {
            for j in c + 1..width {
                let v = (&rows[r][c] * &rows[i][j] - &rows[i][c] * &rows[r][j]) / &prev;
                rows[i][j] = v;
            }
            rows[i][c] = BigInt::zero();
        }
        prev = rows[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    pivots
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -a).collect() }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(ToString::to_string).collect();
        let w = cells.iter().map(String::len).max().unwrap_or(1);
        for i in 0..self.rows {
            let line: Vec<String> =
                (0..self.cols).map(|j| format!("{:>w$}", cells[i * self.cols + j])).collect();
            writeln!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    #[test]
    fn inverse_of_rational_matrix() {
        let m = Matrix::from_rows(vec![vec![int(2), rat(1, 2)], vec![int(1), int(3)]]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Matrix::identity(2));
        assert_eq!(m.determinant(), rat(11, 2));
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let m = Matrix::from_i64(3, 3, &[1, 2, 3, 2, 4, 6, 0, 1, 1]);
        assert!(m.inverse().is_none());
        assert_eq!(m.rank(), 2);
        assert_eq!(m.determinant(), int(0));
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(m.apply(&ns[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn determinant_with_row_swaps() {
        let m = Matrix::from_i64(3, 3, &[0, 1, 0, 1, 0, 0, 0, 0, 5]);
        assert_eq!(m.determinant(), int(-5));
    }

    #[test]
    fn solve_detects_inconsistency() {
        let a = Matrix::from_i64(2, 2, &[1, 1, 2, 2]);
        assert!(a.solve(&Matrix::from_i64(2, 1, &[1, 3])).is_none());
        let x = a.solve(&Matrix::from_i64(2, 1, &[1, 2])).unwrap();
        assert_eq!(&a * &x, Matrix::from_i64(2, 1, &[1, 2]));
    }

    #[test]
    fn sylvester_criterion() {
        assert_eq!(Matrix::identity(4).is_positive_definite(), Ok(true));
        assert_eq!((-&Matrix::identity(3)).is_positive_definite(), Ok(false));
        let indefinite = Matrix::from_i64(2, 2, &[1, 2, 2, 1]);
        assert_eq!(indefinite.is_positive_definite(), Ok(false));
        let semidefinite = Matrix::from_i64(2, 2, &[1, 1, 1, 1]);
        assert_eq!(semidefinite.is_positive_definite(), Ok(false));
        let skew = Matrix::from_i64(2, 2, &[1, 1, 0, 1]);
        assert_eq!(skew.is_positive_definite(), Err(MatrixError::NotSymmetric));
    }

    #[test]
    fn rank_of_wide_matrix() {
        let m = Matrix::from_i64(2, 4, &[1, 0, 2, 0, 0, 0, 0, 3]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.nullspace().len(), 2);
        assert_eq!(m.column_space().len(), 2);
    }
}
