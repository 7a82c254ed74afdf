//! Lie algebras given by structure equations.
//!
//! Convention: for invariant 1-forms and vectors `dα(X, Y) = −α([X, Y])`, so a
//! declaration `d e1 = e26` means `[e2, e6] = −e1`.

pub mod parser;

use crate::algebra::{combinations, unit, zero, Form, Matrix, Rational};
use num_traits::Zero;
use std::collections::BTreeMap;
use thiserror::Error;

pub use parser::{parse_structure_file, ParseError, ParseErrorKind, Schema, StructurePackage};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("expected {expected} differentials, got {got}")]
    Count { expected: usize, got: usize },
    #[error("d e{index} must be a 2-form of dimension {dim}")]
    BadDifferential { index: usize, dim: usize },
    #[error("the given vectors do not span a subalgebra")]
    NotSubalgebra,
    #[error("the given vectors are linearly dependent")]
    Dependent,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    differentials: Vec<Form>,
    /// `brackets[i * n + j] = [e_i, e_j]`.
    brackets: Vec<Vec<Rational>>,
}

impl LieAlgebra {
    /// Builds the algebra from `d e^k` for every basis 1-form.
    pub fn from_differentials(dim: usize, differentials: Vec<Form>) -> Result<Self, LieError> {
        if differentials.len() != dim {
            return Err(LieError::Count { expected: dim, got: differentials.len() });
        }
        for (k, f) in differentials.iter().enumerate() {
            if f.dim() != dim || f.grade() != 2 {
                return Err(LieError::BadDifferential { index: k + 1, dim });
            }
        }
        let mut brackets = vec![vec![zero(); dim]; dim * dim];
        for (k, f) in differentials.iter().enumerate() {
            for (idx, c) in f.terms() {
                let (i, j) = (idx[0], idx[1]);
                brackets[i * dim + j][k] -= c;
                brackets[j * dim + i][k] += c;
            }
        }
        Ok(LieAlgebra { dim, differentials, brackets })
    }

    /// Builds the algebra from brackets `f(i, j) = [e_i, e_j]` for `i < j`.
    pub fn from_brackets(dim: usize, mut f: impl FnMut(usize, usize) -> Vec<Rational>) -> Self {
        let mut differentials = vec![Form::zero(dim, 2); dim];
        for i in 0..dim {
            for j in i + 1..dim {
                for (k, c) in f(i, j).into_iter().enumerate() {
                    differentials[k].add_term(&[i, j], -c);
                }
            }
        }
        Self::from_differentials(dim, differentials).expect("shapes are consistent by construction")
    }

    pub fn abelian(dim: usize) -> Self {
        Self::from_differentials(dim, vec![Form::zero(dim, 2); dim]).expect("valid shapes")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `d e^k` (0-based `k`).
    pub fn differential(&self, k: usize) -> &Form {
        &self.differentials[k]
    }

    pub fn differentials(&self) -> &[Form] {
        &self.differentials
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Rational] {
        &self.brackets[i * self.dim + j]
    }

    /// Structure constant `c^k_{ij}` with `[e_i, e_j] = Σ c^k_{ij} e_k`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.brackets[i * self.dim + j][k]
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let n = self.dim;
        let mut out = vec![zero(); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() || i == j {
                    continue;
                }
                let b = &self.brackets[i * n + j];
                if b.iter().all(Zero::is_zero) {
                    continue;
                }
                let c = &x[i] * &y[j];
                for (o, v) in out.iter_mut().zip(b) {
                    if !v.is_zero() {
                        *o += &c * v;
                    }
                }
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.differentials.iter().all(Form::is_zero)
    }

    /// Chevalley–Eilenberg differential, the antiderivation extending `d e^k`.
    pub fn exterior_derivative(&self, form: &Form) -> Form {
        assert_eq!(form.dim(), self.dim, "form dimension differs from the algebra");
        let k = form.grade();
        let mut out = Form::zero(self.dim, k + 1);
        let mut buf = Vec::with_capacity(k + 1);
        for (idx, c) in form.terms() {
            for (m, &i) in idx.iter().enumerate() {
                let sign_c = if m % 2 == 0 { c.clone() } else { -c.clone() };
                for (pq, a) in self.differentials[i].terms() {
                    buf.clear();
                    buf.extend_from_slice(&idx[..m]);
                    buf.extend_from_slice(pq);
                    buf.extend_from_slice(&idx[m + 1..]);
                    out.add_term(&buf, &sign_c * a);
                }
            }
        }
        out
    }

    /// Jacobi identity, checked as `d(d e^k) = 0` for every `k`.
    pub fn jacobi_check(&self) -> bool {
        self.differentials.iter().all(|f| self.exterior_derivative(f).is_zero())
    }

    /// Whether the span of `vectors` is closed under the bracket.
    pub fn span_involutive(&self, vectors: &[Vec<Rational>]) -> bool {
        if vectors.is_empty() {
            return true;
        }
        let base = Matrix::from_columns(vectors);
        let r = base.rank();
        for (a, x) in vectors.iter().enumerate() {
            for y in &vectors[a + 1..] {
                let b = self.bracket(x, y);
                if b.iter().all(Zero::is_zero) {
                    continue;
                }
                let mut cols = vectors.to_vec();
                cols.push(b);
                if Matrix::from_columns(&cols).rank() != r {
                    return false;
                }
            }
        }
        true
    }

    /// Basis of closed invariant `k`-forms (kernel of `d` in grade `k`).
    pub fn closed_forms_basis(&self, k: usize) -> Vec<Form> {
        let n = self.dim;
        let domain = combinations(n, k);
        let codomain = combinations(n, k + 1);
        if codomain.is_empty() {
            return domain.iter().map(|i| Form::basis(n, i)).collect();
        }
        let position: BTreeMap<&Vec<usize>, usize> =
            codomain.iter().enumerate().map(|(p, i)| (i, p)).collect();
        let mut d = Matrix::zeros(codomain.len(), domain.len());
        for (col, idx) in domain.iter().enumerate() {
            for (out, c) in self.exterior_derivative(&Form::basis(n, idx)).terms() {
                d.set(position[out], col, c.clone());
            }
        }
        d.nullspace()
            .into_iter()
            .map(|v| Form::from_terms(n, k, domain.iter().cloned().zip(v)))
            .collect()
    }

    /// Structure of the subalgebra spanned by linearly independent `basis`,
    /// expressed in that basis.
    pub fn subalgebra(&self, basis: &[Vec<Rational>]) -> Result<LieAlgebra, LieError> {
        let b = Matrix::from_columns(basis);
        if b.rank() != basis.len() {
            return Err(LieError::Dependent);
        }
        let m = basis.len();
        let mut table = BTreeMap::new();
        for i in 0..m {
            for j in i + 1..m {
                let br = self.bracket(&basis[i], &basis[j]);
                let rhs = Matrix::from_columns(&[br]);
                let x = b.solve(&rhs).ok_or(LieError::NotSubalgebra)?;
                table.insert((i, j), x.column(0));
            }
        }
        Ok(LieAlgebra::from_brackets(m, |i, j| table[&(i, j)].clone()))
    }

    /// Basis vectors `e_0, …, e_{n−1}`.
    pub fn frame(&self) -> Vec<Vec<Rational>> {
        (0..self.dim).map(|i| unit(self.dim, i)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, Form};

    fn e(n: usize, idx: &[usize]) -> Form {
        Form::basis(n, &idx.iter().map(|i| i - 1).collect::<Vec<_>>())
    }

    fn solv6() -> LieAlgebra {
        let n = 6;
        LieAlgebra::from_differentials(
            n,
            vec![
                e(n, &[2, 6]),
                -&e(n, &[1, 6]),
                e(n, &[4, 6]),
                -&e(n, &[3, 6]),
                Form::zero(n, 2),
                Form::zero(n, 2),
            ],
        )
        .unwrap()
    }

    #[test]
    fn bracket_sign_convention() {
        let l = solv6();
        assert_eq!(l.bracket_basis(1, 5), &[int(-1), int(0), int(0), int(0), int(0), int(0)][..]);
        assert!(l.jacobi_check());
    }

    #[test]
    fn derivative_of_e12_vanishes() {
        let l = solv6();
        assert!(l.exterior_derivative(&e(6, &[1, 2])).is_zero());
        assert!(l.exterior_derivative(&e(6, &[2, 5, 6])).is_zero());
    }

    #[test]
    fn closed_forms_of_abelian_algebra() {
        let l = LieAlgebra::abelian(4);
        assert_eq!(l.closed_forms_basis(2).len(), 6);
    }

    #[test]
    fn involutive_spans() {
        let l = solv6();
        assert!(l.span_involutive(&l.frame()));
        let im: Vec<_> = [0, 1, 4, 5].iter().map(|&i| unit(6, i)).collect();
        assert!(l.span_involutive(&im));
        let sub = l.subalgebra(&im).unwrap();
        assert!(sub.jacobi_check());
        assert_eq!(sub.dim(), 4);
        let not_closed: Vec<_> = [0, 5].iter().map(|&i| unit(6, i)).collect();
        assert!(!l.span_involutive(&not_closed));
        assert_eq!(l.subalgebra(&not_closed), Err(LieError::NotSubalgebra));
    }

    #[test]
    fn wrong_shapes_are_rejected() {
        assert!(matches!(
            LieAlgebra::from_differentials(2, vec![Form::zero(2, 2)]),
            Err(LieError::Count { .. })
        ));
        assert!(matches!(
            LieAlgebra::from_differentials(2, vec![Form::zero(2, 1), Form::zero(2, 2)]),
            Err(LieError::BadDifferential { index: 1, .. })
        ));
    }
}
