//! Schouten–Nijenhuis bracket of invariant multivectors by three routes.

use super::{PoissonError, SkewEndo};
use crate::algebra::{int, unit, Matrix, Multivector, Tensor3};
use crate::connections::{levi_civita_lowered, Connection};
use crate::lie::LieAlgebra;
use num_traits::Zero;

/// How `[π, π]` is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SchoutenMode {
    /// Graded Leibniz expansion over the invariant frame (works for any π).
    Frame,
    /// `2♯₃⁻¹ σ g((∇^{LC}_{QX} Q) Y, Z)`; needs the skew endomorphism.
    LeviCivita,
    /// `2♯₃⁻¹ σ g(X, [QY, QZ])`; needs the skew endomorphism.
    Invariant,
}

impl SchoutenMode {
    pub const ALL: [SchoutenMode; 3] = [SchoutenMode::Frame, SchoutenMode::LeviCivita, SchoutenMode::Invariant];

    pub fn name(self) -> &'static str {
        match self {
            SchoutenMode::Frame => "frame",
            SchoutenMode::LeviCivita => "levi-civita",
            SchoutenMode::Invariant => "invariant",
        }
    }
}

/// `[A, B]` for invariant multivectors of any grades, expanded on basis blades:
/// `[X_1∧…∧X_p, Y_1∧…∧Y_q] = Σ (−1)^{i+j} [X_i, Y_j] ∧ X_1…X̂_i…X_p ∧ Y_1…Ŷ_j…Y_q`.
pub fn schouten(l: &LieAlgebra, a: &Multivector, b: &Multivector) -> Multivector {
    let n = l.dim();
    assert!(a.dim() == n && b.dim() == n, "multivector dimension differs from the algebra");
    let (p, q) = (a.grade(), b.grade());
    assert!(p >= 1 && q >= 1, "grade-0 brackets are not used here");
    let mut out = Multivector::zero(n, p + q - 1);
    let mut buf = Vec::with_capacity(p + q - 1);
    for (ia, ca) in a.terms() {
        for (ib, cb) in b.terms() {
            let c = ca * cb;
            for (s, &x) in ia.iter().enumerate() {
                for (t, &y) in ib.iter().enumerate() {
                    let br = l.bracket_basis(x, y);
                    let sign = if (s + t) % 2 == 0 { c.clone() } else { -c.clone() };
                    for (k, v) in br.iter().enumerate() {
                        if v.is_zero() {
                            continue;
                        }
                        buf.clear();
                        buf.push(k);
                        buf.extend(ia.iter().enumerate().filter(|&(u, _)| u != s).map(|(_, &i)| i));
                        buf.extend(ib.iter().enumerate().filter(|&(u, _)| u != t).map(|(_, &i)| i));
                        out.add_term(&buf, &sign * v);
                    }
                }
            }
        }
    }
    out
}

/// `g((∇^{LC}_{QX} Q) Y, Z)`.
pub fn levi_civita_derivative_tensor(l: &LieAlgebra, q: &SkewEndo) -> Tensor3 {
    let n = l.dim();
    let g = q.metric().matrix();
    let lc = Connection::from_lowered(q.metric(), &levi_civita_lowered(l, g));
    // g((∇_{e_i} Q) e_b, e_c) = (D_i^T G)[b][c]
    let derivs: Vec<Matrix> =
        (0..n).map(|i| &lc.derivative_of_endomorphism(&unit(n, i), q.matrix()).transpose() * g).collect();
    let qm = q.matrix();
    Tensor3::from_fn(n, |a, b, c| {
        let mut s = crate::algebra::zero();
        for (i, d) in derivs.iter().enumerate() {
            let coef = qm.get(i, a);
            if !coef.is_zero() {
                s += coef * d.get(b, c);
            }
        }
        s
    })
}

/// `g(X, [QY, QZ])`.
pub fn invariant_bracket_tensor(l: &LieAlgebra, q: &SkewEndo) -> Tensor3 {
    let n = l.dim();
    let g = q.metric().matrix();
    let cols = q.matrix().columns();
    let mut low = vec![vec![crate::algebra::zero(); n]; n * n];
    for b in 0..n {
        for c in 0..n {
            low[b * n + c] = g.apply(&l.bracket(&cols[b], &cols[c]));
        }
    }
    Tensor3::from_fn(n, |a, b, c| low[b * n + c][a].clone())
}

/// `[π, π]` by the chosen route. The metric routes need `skew` with
/// `π = bivector_from_skew(skew)`.
pub fn schouten_square(
    l: &LieAlgebra,
    pi: &Multivector,
    mode: SchoutenMode,
    skew: Option<&SkewEndo>,
) -> Result<Multivector, PoissonError> {
    let tensor = match (mode, skew) {
        (SchoutenMode::Frame, _) => return Ok(schouten(l, pi, pi)),
        (SchoutenMode::LeviCivita, Some(q)) => levi_civita_derivative_tensor(l, q),
        (SchoutenMode::Invariant, Some(q)) => invariant_bracket_tensor(l, q),
        (m, None) => return Err(PoissonError::ModeNeedsSkew(m)),
    };
    let q = skew.expect("checked above");
    let form = tensor.cyclic_sum().scale(&int(2)).to_form().map_err(PoissonError::NotAForm)?;
    Ok(q.metric().sharp_inverse(&form))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Form, Matrix};
    use crate::hermitian::Metric;

    #[test]
    fn abelian_brackets_vanish_in_every_mode() {
        let l = LieAlgebra::abelian(4);
        let q = SkewEndo::new(Matrix::from_i64(4, 4, &[0, -1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 2, 0, 0, -2, 0]), Metric::identity(4)).unwrap();
        let pi = super::super::bivector_from_skew(&q);
        for mode in SchoutenMode::ALL {
            assert!(schouten_square(&l, &pi, mode, Some(&q)).unwrap().is_zero());
        }
        assert_eq!(
            schouten_square(&l, &pi, SchoutenMode::Invariant, None),
            Err(PoissonError::ModeNeedsSkew(SchoutenMode::Invariant))
        );
    }

    #[test]
    fn vector_bracket_is_lie_bracket() {
        // d e1 = e23 gives [e2, e3] = -e1
        let l = LieAlgebra::from_differentials(
            3,
            vec![Form::basis(3, &[1, 2]), Form::zero(3, 2), Form::zero(3, 2)],
        )
        .unwrap();
        let x = Multivector::basis(3, &[1]);
        let y = Multivector::basis(3, &[2]);
        assert_eq!(schouten(&l, &x, &y).as_vector(), l.bracket(&unit(3, 1), &unit(3, 2)));
    }
}
