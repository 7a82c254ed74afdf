//! Sparse alternating tensors: invariant forms and multivectors.
//!
//! Components live in a `BTreeMap` keyed by strictly increasing index tuples
//! (0-based), so two tensors are equal exactly when their maps are equal.
//! Normalization is the determinant convention: `e^{12}(e_1, e_2) = 1`.

use super::matrix::Matrix;
use super::rational::{zero, Rational};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TensorError {
    #[error("dimension mismatch: {0} vs {1}")]
    Dimension(usize, usize),
    #[error("expected {expected} arguments, got {got}")]
    Arity { expected: usize, got: usize },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Covariant;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Contravariant;

#[derive(Debug, PartialEq, Eq, Hash)]
pub struct Alternating<V> {
    dim: usize,
    grade: usize,
    terms: BTreeMap<Vec<usize>, Rational>,
    _variance: PhantomData<V>,
}

impl<V> Clone for Alternating<V> {
    fn clone(&self) -> Self {
        Alternating { dim: self.dim, grade: self.grade, terms: self.terms.clone(), _variance: PhantomData }
    }
}

/// Invariant differential form (covariant).
pub type Form = Alternating<Covariant>;
/// Invariant multivector field (contravariant).
pub type Multivector = Alternating<Contravariant>;

/// Sorts `idx` in place; returns the permutation sign, or 0 on a repeated index.
pub fn sort_with_sign(idx: &mut [usize]) -> i32 {
    let mut sign = 1;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        0
    } else {
        sign
    }
}

impl<V> Alternating<V> {
    pub fn zero(dim: usize, grade: usize) -> Self {
        Alternating { dim, grade, terms: BTreeMap::new(), _variance: PhantomData }
    }

    /// `c * e^{i_1...i_k}` for arbitrary (0-based) index order.
    pub fn monomial(dim: usize, indices: &[usize], c: Rational) -> Self {
        let mut out = Self::zero(dim, indices.len());
        out.add_term(indices, c);
        out
    }

    pub fn basis(dim: usize, indices: &[usize]) -> Self {
        Self::monomial(dim, indices, super::rational::one())
    }

    pub fn from_terms(
        dim: usize,
        grade: usize,
        terms: impl IntoIterator<Item = (Vec<usize>, Rational)>,
    ) -> Self {
        let mut out = Self::zero(dim, grade);
        for (idx, c) in terms {
            out.add_term(&idx, c);
        }
        out
    }

    /// Adds `c * e^{indices}`, reordering indices with the matching sign.
    pub fn add_term(&mut self, indices: &[usize], c: Rational) {
        assert_eq!(indices.len(), self.grade, "grade mismatch");
        assert!(indices.iter().all(|&i| i < self.dim), "index out of range");
        if c.is_zero() {
            return;
        }
        let mut idx = indices.to_vec();
        let s = sort_with_sign(&mut idx);
        if s == 0 {
            return;
        }
        let c = if s < 0 { -c } else { c };
        let slot = self.terms.entry(idx.clone()).or_insert_with(zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&idx);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sorted index tuples with nonzero coefficient.
    pub fn support(&self) -> Vec<Vec<usize>> {
        self.terms.keys().cloned().collect()
    }

    /// Component on an arbitrary index tuple (sign-adjusted, 0 on repeats).
    pub fn coefficient(&self, indices: &[usize]) -> Rational {
        let mut idx = indices.to_vec();
        match sort_with_sign(&mut idx) {
            0 => zero(),
            s => {
                let c = self.terms.get(&idx).cloned().unwrap_or_else(zero);
                if s < 0 {
                    -c
                } else {
                    c
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim, self.grade);
        }
        Alternating {
            dim: self.dim,
            grade: self.grade,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
            _variance: PhantomData,
        }
    }

    pub fn checked_wedge(&self, other: &Self) -> Result<Self, TensorError> {
        if self.dim != other.dim {
            return Err(TensorError::Dimension(self.dim, other.dim));
        }
        let mut out = Self::zero(self.dim, self.grade + other.grade);
        let mut buf = Vec::with_capacity(out.grade);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                buf.clear();
                buf.extend_from_slice(a);
                buf.extend_from_slice(b);
                out.add_term(&buf, x * y);
            }
        }
        Ok(out)
    }

    pub fn wedge(&self, other: &Self) -> Self {
        self.checked_wedge(other).expect("wedge of tensors with different dimensions")
    }

    /// Pairs the tensor with `grade` dual arguments (determinant convention).
    pub fn checked_evaluate(&self, args: &[Vec<Rational>]) -> Result<Rational, TensorError> {
        if args.len() != self.grade {
            return Err(TensorError::Arity { expected: self.grade, got: args.len() });
        }
        if let Some(bad) = args.iter().find(|a| a.len() != self.dim) {
            return Err(TensorError::Dimension(self.dim, bad.len()));
        }
        let mut total = zero();
        for (idx, c) in &self.terms {
            let minor = Matrix::from_fn(self.grade, self.grade, |r, s| args[s][idx[r]].clone());
            total += c * minor.determinant();
        }
        Ok(total)
    }

    pub fn evaluate(&self, args: &[Vec<Rational>]) -> Rational {
        self.checked_evaluate(args).expect("evaluation arity mismatch")
    }

    /// Replaces every basis factor `e^i` by the degree-one tensor `images[i]`
    /// and expands the wedge product. This is the common core of pullbacks,
    /// pushforwards and index raising.
    pub fn map_factors<W>(&self, images: &[Vec<Rational>]) -> Alternating<W> {
        assert_eq!(images.len(), self.dim);
        let target_dim = images.first().map_or(self.dim, Vec::len);
        let mut out = Alternating::<W>::zero(target_dim, self.grade);
        for (idx, c) in &self.terms {
            let mut partial: BTreeMap<Vec<usize>, Rational> = BTreeMap::new();
            partial.insert(Vec::new(), c.clone());
            for &i in idx {
                let mut next: BTreeMap<Vec<usize>, Rational> = BTreeMap::new();
                for (k, v) in &partial {
                    for (j, a) in images[i].iter().enumerate() {
                        if a.is_zero() || k.contains(&j) {
                            continue;
                        }
                        let mut key = k.clone();
                        key.push(j);
                        *next.entry(key).or_insert_with(zero) += v * a;
                    }
                }
                partial = next;
            }
            for (k, v) in partial {
                out.add_term(&k, v);
            }
        }
        out
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        assert_eq!((self.dim, self.grade), (other.dim, other.grade), "shape mismatch");
        let mut out = self.clone();
        for (k, v) in &other.terms {
            let v = if negate { -v.clone() } else { v.clone() };
            out.add_term(k, v);
        }
        out
    }

    /// Relabels the variance; used by identity-metric renaming and tests.
    pub fn cast<W>(&self) -> Alternating<W> {
        Alternating { dim: self.dim, grade: self.grade, terms: self.terms.clone(), _variance: PhantomData }
    }

    /// Grade-2 tensor as the antisymmetric matrix `M[i][j] = c(i, j)`.
    pub fn to_matrix(&self) -> Matrix {
        assert_eq!(self.grade, 2);
        Matrix::from_fn(self.dim, self.dim, |i, j| self.coefficient(&[i, j]))
    }

    /// Grade-2 tensor from an antisymmetric matrix.
    pub fn from_matrix(m: &Matrix) -> Self {
        assert!(m.is_antisymmetric(), "matrix is not antisymmetric");
        let n = m.rows();
        let mut out = Self::zero(n, 2);
        for i in 0..n {
            for j in i + 1..n {
                out.add_term(&[i, j], m.get(i, j).clone());
            }
        }
        out
    }

    /// Canonical text: `e12 + 1/2*e34`, `e(1,10)` when the dimension exceeds 9.
    pub fn to_expression(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (n, (idx, c)) in self.terms.iter().enumerate() {
            let neg = c < &zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            match (n, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            if !num_traits::One::is_one(&mag) {
                s.push_str(&format!("{mag}*"));
            }
            s.push_str(&index_label(self.dim, idx));
        }
        s
    }
}

/// `e126` for small dimensions, `e(1,2,10)` otherwise (1-based display).
pub fn index_label(dim: usize, idx: &[usize]) -> String {
    if dim <= 9 {
        let digits: String = idx.iter().map(|i| char::from(b'1' + *i as u8)).collect();
        format!("e{digits}")
    } else {
        let parts: Vec<String> = idx.iter().map(|i| (i + 1).to_string()).collect();
        format!("e({})", parts.join(","))
    }
}

impl Form {
    /// `α ↦ α(A·, …, A·)`.
    pub fn pullback(&self, a: &Matrix) -> Form {
        let rows: Vec<Vec<Rational>> = (0..self.dim).map(|i| a.row(i)).collect();
        self.map_factors(&rows)
    }

    /// Interior product `ι_X α = α(X, ·, …)`.
    pub fn interior(&self, x: &[Rational]) -> Form {
        assert!(self.grade > 0);
        let mut out = Form::zero(self.dim, self.grade - 1);
        for (idx, c) in &self.terms {
            for (pos, &i) in idx.iter().enumerate() {
                if x[i].is_zero() {
                    continue;
                }
                let mut rest = idx.clone();
                rest.remove(pos);
                let sign = if pos % 2 == 0 { c.clone() } else { -c.clone() };
                out.add_term(&rest, sign * &x[i]);
            }
        }
        out
    }
}

impl Multivector {
    /// Pushes every vector factor forward by `A` (columns are images).
    pub fn pushforward(&self, a: &Matrix) -> Multivector {
        self.map_factors(&a.columns())
    }

    /// A vector as a grade-1 multivector.
    pub fn vector(v: &[Rational]) -> Multivector {
        Multivector::from_terms(v.len(), 1, v.iter().enumerate().map(|(i, c)| (vec![i], c.clone())))
    }

    /// Components of a grade-1 multivector.
    pub fn as_vector(&self) -> Vec<Rational> {
        assert_eq!(self.grade, 1);
        (0..self.dim).map(|i| self.coefficient(&[i])).collect()
    }

    /// `π^♯ α = π(α, ·)` for a bivector.
    pub fn sharp(&self, alpha: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.grade, 2);
        let mut v = vec![zero(); self.dim];
        for (idx, c) in &self.terms {
            let (i, j) = (idx[0], idx[1]);
            v[j] += c * &alpha[i];
            v[i] -= c * &alpha[j];
        }
        v
    }

    /// Matrix of `π^♯` acting on covector components (columns are images of `e^i`).
    pub fn sharp_matrix(&self) -> Matrix {
        let n = self.dim;
        let cols: Vec<Vec<Rational>> =
            (0..n).map(|i| self.sharp(&super::rational::unit(n, i))).collect();
        Matrix::from_columns(&cols)
    }
}

impl<V> Add for &Alternating<V> {
    type Output = Alternating<V>;
    fn add(self, rhs: &Alternating<V>) -> Alternating<V> {
        self.combine(rhs, false)
    }
}

impl<V> Sub for &Alternating<V> {
    type Output = Alternating<V>;
    fn sub(self, rhs: &Alternating<V>) -> Alternating<V> {
        self.combine(rhs, true)
    }
}

impl<V> Neg for &Alternating<V> {
    type Output = Alternating<V>;
    fn neg(self) -> Alternating<V> {
        self.scale(&-super::rational::one())
    }
}

impl<V> fmt::Display for Alternating<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expression())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{half, int, unit};

    fn e(idx: &[usize]) -> Form {
        Form::basis(6, &idx.iter().map(|i| i - 1).collect::<Vec<_>>())
    }

    #[test]
    fn wedge_basics() {
        assert_eq!(e(&[1]).wedge(&e(&[2])), e(&[1, 2]));
        assert!(e(&[1, 2]).wedge(&e(&[1, 2])).is_zero());
        let lhs = (&e(&[1, 2]) + &e(&[3, 4])).wedge(&e(&[5, 6]));
        assert_eq!(lhs, &e(&[1, 2, 5, 6]) + &e(&[3, 4, 5, 6]));
        assert_eq!(e(&[2]).wedge(&e(&[1])), -&e(&[1, 2]));
    }

    #[test]
    fn wedge_dimension_mismatch() {
        let a = Form::basis(3, &[0]);
        assert_eq!(a.checked_wedge(&e(&[1])), Err(TensorError::Dimension(3, 6)));
    }

    #[test]
    fn evaluation_normalization() {
        let n = 6;
        assert_eq!(e(&[1, 2]).evaluate(&[unit(n, 0), unit(n, 1)]), int(1));
        assert_eq!(e(&[1, 2]).evaluate(&[unit(n, 1), unit(n, 0)]), int(-1));
        let f = e(&[2, 5, 6]).scale(&half());
        assert_eq!(f.evaluate(&[unit(n, 1), unit(n, 4), unit(n, 5)]), half());
        assert!(matches!(f.checked_evaluate(&[unit(n, 1)]), Err(TensorError::Arity { .. })));
    }

    #[test]
    fn expression_formatting() {
        let f = &e(&[1, 2]) - &e(&[3, 4]).scale(&half());
        assert_eq!(f.to_expression(), "e12 - 1/2*e34");
        let big = Form::basis(10, &[0, 9]);
        assert_eq!(big.to_expression(), "e(1,10)");
        assert_eq!(Form::zero(3, 2).to_expression(), "0");
    }

    #[test]
    fn interior_product() {
        let f = e(&[1, 2, 3]);
        assert_eq!(f.interior(&unit(6, 1)), -&e(&[1, 3]));
    }

    #[test]
    fn bivector_sharp_is_first_slot() {
        let p = Multivector::basis(3, &[0, 1]);
        assert_eq!(p.sharp(&unit(3, 0)), unit(3, 1));
        assert_eq!(p.sharp(&unit(3, 1)), unit(3, 0).iter().map(|x| -x).collect::<Vec<_>>());
    }
}
