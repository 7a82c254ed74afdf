//! Twisting forms: the closed 3-forms `φ` with `[π, π] = ½Λ³π^♯φ`.

use super::schouten::schouten;
use super::{lambda_pullback, PoissonError, SkewEndo};
use crate::algebra::{combinations, half, int, rat, Form, Matrix, Multivector, Rational};
use crate::hermitian::TamedPackage;
use crate::lie::LieAlgebra;

/// How an endomorphism `A` acts on a 3-form in the `β²` condition
/// `J₊dω₊ + J₋dω₋ = ⅛ A·φ`, `A = J₊ − J₋`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SlotAction {
    /// `φ(AX, AY, AZ)`.
    AllSlots,
    /// `φ(AX, Y, Z) + φ(X, AY, Z) + φ(X, Y, AZ)`.
    Derivation,
}

impl SlotAction {
    pub const ALL: [SlotAction; 2] = [SlotAction::AllSlots, SlotAction::Derivation];

    pub fn name(self) -> &'static str {
        match self {
            SlotAction::AllSlots => "all-slots",
            SlotAction::Derivation => "derivation",
        }
    }

    pub fn apply(self, a: &Matrix, phi: &Form) -> Form {
        match self {
            SlotAction::AllSlots => phi.pullback(a),
            SlotAction::Derivation => {
                let mut out = Form::zero(a.rows(), phi.grade());
                for slot in 0..phi.grade() {
                    out = &out + &one_slot(phi, a, slot);
                }
                out
            }
        }
    }
}

fn one_slot(phi: &Form, a: &Matrix, slot: usize) -> Form {
    let n = a.rows();
    let mut out = Form::zero(n, phi.grade());
    for (idx, c) in phi.terms() {
        // Replace factor `slot` of e^{i_0} ∧ … by its pullback Σ_k A[i_slot][k] e^k.
        // Summed over all factors this is the one-slot derivation action.
        for k in 0..n {
            let m = a.get(idx[slot], k);
            if num_traits::Zero::is_zero(m) {
                continue;
            }
            let mut v = idx.clone();
            v[slot] = k;
            out.add_term(&v, c * m);
        }
    }
    out
}

/// The equation a twisting form must satisfy.
#[derive(Clone, Copy, Debug)]
pub enum TwistShape<'a> {
    /// `[π, π] = ½Λ³π^♯φ`.
    Standard,
    /// `J₊dω₊ + J₋dω₋ = ⅛ (J₊ − J₋)·φ` for the package's `β²`.
    Beta2 { package: &'a TamedPackage, action: SlotAction },
}

/// Affine set `particular + span(kernel)` of closed 3-forms, or empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistingSolutions {
    pub particular: Option<Form>,
    pub kernel: Vec<Form>,
}

impl TwistingSolutions {
    pub fn is_empty(&self) -> bool {
        self.particular.is_none()
    }

    pub fn contains(&self, phi: &Form) -> bool {
        let Some(p) = &self.particular else { return false };
        let n = p.dim();
        let combos = combinations(n, 3);
        let coords = |f: &Form| -> Vec<Rational> { combos.iter().map(|i| f.coefficient(i)).collect() };
        let mut cols: Vec<Vec<Rational>> = self.kernel.iter().map(coords).collect();
        let base = if cols.is_empty() { 0 } else { Matrix::from_columns(&cols).rank() };
        cols.push(coords(&(phi - p)));
        Matrix::from_columns(&cols).rank() == base
    }

    /// Dimension of the affine solution set, `None` when empty.
    pub fn dimension(&self) -> Option<usize> {
        self.particular.as_ref().map(|_| self.kernel.len())
    }
}

fn coordinates<V>(x: &crate::algebra::Alternating<V>, combos: &[Vec<usize>]) -> Vec<Rational> {
    combos.iter().map(|i| x.coefficient(i)).collect()
}

/// Solves the linear system over `closed_forms_basis(L, 3)`.
pub fn solve_twisting_form(l: &LieAlgebra, pi: &Multivector, shape: TwistShape<'_>) -> TwistingSolutions {
    let n = l.dim();
    let combos = combinations(n, 3);
    let basis = l.closed_forms_basis(3);
    let (columns, rhs): (Vec<Vec<Rational>>, Vec<Rational>) = match shape {
        TwistShape::Standard => (
            basis.iter().map(|phi| coordinates(&lambda_pullback(pi, phi).scale(&half()), &combos)).collect(),
            coordinates(&schouten(l, pi, pi), &combos),
        ),
        TwistShape::Beta2 { package, action } => {
            let a = &package.j_plus - &package.j_minus;
            (
                basis.iter().map(|phi| coordinates(&action.apply(&a, phi).scale(&rat(1, 8)), &combos)).collect(),
                coordinates(&(&package.jd_omega_plus() + &package.jd_omega_minus()), &combos),
            )
        }
    };
    let combine = |c: &[Rational]| {
        let mut f = Form::zero(n, 3);
        for (b, x) in basis.iter().zip(c) {
            f = &f + &b.scale(x);
        }
        f
    };
    if basis.is_empty() {
        let ok = rhs.iter().all(|x| x == &crate::algebra::zero());
        return TwistingSolutions { particular: ok.then(|| Form::zero(n, 3)), kernel: Vec::new() };
    }
    let m = Matrix::from_columns(&columns);
    let particular = m.solve(&Matrix::from_columns(&[rhs])).map(|x| combine(&x.column(0)));
    let kernel = m.nullspace().iter().map(|v| combine(v)).collect();
    TwistingSolutions { particular, kernel }
}

/// `q(X, Y) = g(Q⁻¹X, Y)`.
pub fn q_inverse_form(q: &SkewEndo) -> Result<Form, PoissonError> {
    let inv = q.matrix().inverse().ok_or(PoissonError::Singular)?;
    Ok(Form::from_matrix(&(&inv.transpose() * q.metric().matrix())))
}

/// A bivector with a proposed twisting form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedPoissonCandidate {
    pub pi: Multivector,
    pub phi: Form,
}

impl TwistedPoissonCandidate {
    /// `π = bivector_from_skew(Q)` with `φ = 4 dq`, `q = g(Q⁻¹·, ·)`.
    pub fn from_invertible(l: &LieAlgebra, q: &SkewEndo) -> Result<Self, PoissonError> {
        let qf = q_inverse_form(q)?;
        Ok(TwistedPoissonCandidate {
            pi: super::bivector_from_skew(q),
            phi: l.exterior_derivative(&qf).scale(&int(4)),
        })
    }

    /// `[π, π] − ½Λ³π^♯φ`.
    pub fn residual(&self, l: &LieAlgebra) -> Multivector {
        &schouten(l, &self.pi, &self.pi) - &lambda_pullback(&self.pi, &self.phi).scale(&half())
    }

    /// `dφ = 0` and the residual vanishes.
    pub fn holds(&self, l: &LieAlgebra) -> bool {
        l.exterior_derivative(&self.phi).is_zero() && self.residual(l).is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::Metric;

    #[test]
    fn derivation_action_is_the_linearization() {
        // On an abelian algebra, the all-slots action by (1 + tA) has first-order
        // term equal to the derivation action.
        let a = Matrix::from_i64(3, 3, &[1, 2, 0, 0, -1, 3, 4, 0, 2]);
        let phi = Form::basis(3, &[0, 1, 2]);
        let der = SlotAction::Derivation.apply(&a, &phi);
        // For a top form the derivation action is multiplication by the trace.
        assert_eq!(der, phi.scale(&int(2)));
        let all = SlotAction::AllSlots.apply(&a, &phi);
        assert_eq!(all, phi.scale(&a.determinant()));
    }

    #[test]
    fn standard_complex_structure_is_poisson_with_q_minus_omega() {
        let l = LieAlgebra::abelian(4);
        let j = Matrix::from_i64(4, 4, &[0, 1, 0, 0, -1, 0, 0, 0, 0, 0, 0, 1, 0, 0, -1, 0]);
        let q = SkewEndo::new(j.clone(), Metric::identity(4)).unwrap();
        // ω(X, Y) = g(JX, Y)
        let omega = Form::from_matrix(&j.transpose());
        assert_eq!(q_inverse_form(&q).unwrap(), -&omega);
        let cand = TwistedPoissonCandidate::from_invertible(&l, &q).unwrap();
        assert!(cand.phi.is_zero() && cand.holds(&l));
        let sols = solve_twisting_form(&l, &cand.pi, TwistShape::Standard);
        assert!(sols.contains(&Form::zero(4, 3)));
    }

    #[test]
    fn singular_q_is_rejected() {
        let q = SkewEndo::new(Matrix::zeros(2, 2), Metric::identity(2)).unwrap();
        assert_eq!(q_inverse_form(&q), Err(PoissonError::Singular));
    }
}
