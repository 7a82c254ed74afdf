//! Bivectors from skew endomorphisms, Schouten brackets and twisted Poisson
//! structures.
//!
//! Conventions: `π^♯α = π(α, ·)`; `(Λ³π^♯φ)(α, β, γ) = φ(π^♯α, π^♯β, π^♯γ)`;
//! the Schouten bracket is the graded Leibniz extension of the Lie bracket,
//! `[X∧Y, Z∧W] = [X,Z]∧Y∧W − [X,W]∧Y∧Z − [Y,Z]∧X∧W + [Y,W]∧X∧Z`.

pub mod brackets;
pub mod holomorphy;
pub mod leaf;
pub mod schouten;
pub mod twist;

use crate::algebra::{Form, Matrix, Multivector, Rational};
use crate::hermitian::{Metric, TamedPackage};
use thiserror::Error;

pub use brackets::{
    beta_bivectors, beta_bracket_residuals, commutator_bracket, commutator_bracket_formula,
    commutator_bracket_formula_negated_nijenhuis, commutator_skew, surface_bracket_formula, zabzine_residual,
    BetaResiduals,
};
pub use holomorphy::{
    chern_derivative_residuals, frak_n, holomorphy, psi_30, psi_tensor, ChernDerivativeResiduals, Holomorphy,
};
pub use leaf::{image_analysis, restrict_to_image, ImageReport, Leaf};
pub use schouten::{schouten, schouten_square, SchoutenMode};
pub use twist::{q_inverse_form, solve_twisting_form, SlotAction, TwistShape, TwistedPoissonCandidate, TwistingSolutions};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PoissonError {
    #[error("endomorphism is not skew for the metric (first failure at {0:?})")]
    NotSkew([usize; 2]),
    #[error("the {0:?} route needs the skew endomorphism behind the bivector")]
    ModeNeedsSkew(SchoutenMode),
    #[error("endomorphism is singular")]
    Singular,
    #[error("expected a closed 3-form, got a non-skew tensor at {0:?}")]
    NotAForm([usize; 3]),
    #[error("the image of Q is not a nonzero subalgebra")]
    NotSubalgebra,
    #[error("endomorphism does not preserve the leaf")]
    NotInvariant,
}

/// An endomorphism `Q` with `g(QX, Y) = −g(X, QY)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewEndo {
    q: Matrix,
    metric: Metric,
}

impl SkewEndo {
    pub fn new(q: Matrix, metric: Metric) -> Result<Self, PoissonError> {
        // g(Q e_i, e_j) = (Q^T G)[i][j]
        let s = &q.transpose() * metric.matrix();
        let n = q.rows();
        for i in 0..n {
            for j in 0..=i {
                if *s.get(i, j) != -s.get(j, i).clone() {
                    return Err(PoissonError::NotSkew([i, j]));
                }
            }
        }
        Ok(SkewEndo { q, metric })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.q
    }

    pub fn metric(&self) -> &Metric {
        &self.metric
    }

    pub fn dim(&self) -> usize {
        self.q.rows()
    }

    /// The 2-form `S(X, Y) = g(QX, Y)`.
    pub fn two_form(&self) -> Form {
        Form::from_matrix(&(&self.q.transpose() * self.metric.matrix()))
    }

    pub fn scale(&self, c: &Rational) -> SkewEndo {
        SkewEndo { q: self.q.scale(c), metric: self.metric.clone() }
    }
}

/// `Q̃ = ♯₂⁻¹S`; as a covector-to-vector map it is `Q ∘ ♯⁻¹`.
pub fn bivector_from_skew(q: &SkewEndo) -> Multivector {
    q.metric.sharp_inverse(&q.two_form())
}

/// Bivector whose map `π^♯` inverts `X ↦ ι_X ω` for a nondegenerate 2-form.
pub fn inverse_bivector(omega: &Form) -> Result<Multivector, PoissonError> {
    let iota = omega.to_matrix().transpose();
    let inv = iota.inverse().ok_or(PoissonError::Singular)?;
    // π(e^i, e^j) = (π^♯ e^i)_j = inv[j][i]
    Ok(Multivector::from_matrix(&inv.transpose()))
}

/// `Λ³π^♯φ`.
pub fn lambda_pullback(pi: &Multivector, phi: &Form) -> Multivector {
    let sharp = pi.sharp_matrix();
    let rows: Vec<Vec<Rational>> = (0..pi.dim()).map(|i| sharp.row(i)).collect();
    phi.map_factors(&rows)
}

/// `♯₃⁻¹(f)` with the package metric.
pub fn raise(pkg: &TamedPackage, f: &Form) -> Multivector {
    pkg.metric.sharp_inverse(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, unit};

    #[test]
    fn zero_endomorphism_gives_zero_bivector() {
        let q = SkewEndo::new(Matrix::zeros(3, 3), Metric::identity(3)).unwrap();
        assert!(bivector_from_skew(&q).is_zero());
    }

    #[test]
    fn skewness_is_enforced() {
        let err = SkewEndo::new(Matrix::identity(2), Metric::identity(2)).unwrap_err();
        assert_eq!(err, PoissonError::NotSkew([0, 0]));
    }

    #[test]
    fn bivector_map_is_q_after_sharp_inverse() {
        let g = Metric::new(Matrix::from_i64(2, 2, &[2, 0, 0, 1])).unwrap();
        // Q skew for g: g(Qe1, e2) = -g(e1, Qe2)
        let q = SkewEndo::new(Matrix::from_i64(2, 2, &[0, 1, -2, 0]), g.clone()).unwrap();
        let pi = bivector_from_skew(&q);
        assert_eq!(pi.sharp_matrix(), q.matrix() * g.inverse());
        assert_eq!(pi.sharp(&unit(2, 0)), q.matrix().apply(&g.inverse().apply(&unit(2, 0))));
        let _ = int(0);
    }

    #[test]
    fn inverse_bivector_inverts_contraction() {
        let omega = Form::basis(2, &[0, 1]);
        let pi = inverse_bivector(&omega).unwrap();
        let iota = omega.to_matrix().transpose();
        assert_eq!(&pi.sharp_matrix() * &iota, Matrix::identity(2));
    }
}
