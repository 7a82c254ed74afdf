//! Closed formulas for Schouten squares of bivectors built from a tamed package.

use super::schouten::schouten;
use super::{bivector_from_skew, inverse_bivector, SkewEndo};
use crate::algebra::{int, Form, Matrix, Multivector, Tensor3};
use crate::connections::nijenhuis_minus_tensors;
use crate::hermitian::{act_on_form, Metric, TamedPackage};
use crate::lie::LieAlgebra;

/// `[ω⁻¹, ω⁻¹] − ♯₃⁻¹(2 J dω)` for `ω(X, Y) = g(X, JY)`.
pub fn zabzine_residual(l: &LieAlgebra, metric: &Metric, j: &Matrix) -> Multivector {
    let omega = Form::from_matrix(&(metric.matrix() * j));
    let inv = inverse_bivector(&omega).expect("a Hermitian fundamental form is nondegenerate");
    let lhs = schouten(l, &inv, &inv);
    let jdw = act_on_form(j, &l.exterior_derivative(&omega)).scale(&int(2));
    &lhs - &metric.sharp_inverse(&jdw)
}

/// `(β¹, β²) = (ω₊⁻¹ + ω₋⁻¹, ω₊⁻¹ − ω₋⁻¹)`.
pub fn beta_bivectors(pkg: &TamedPackage) -> (Multivector, Multivector) {
    let p = inverse_bivector(&pkg.omega_plus).expect("ω₊ is nondegenerate");
    let m = inverse_bivector(&pkg.omega_minus).expect("ω₋ is nondegenerate");
    (&p + &m, &p - &m)
}

/// Residuals of the two bracket claims for `β¹, β²`, plus the identifications
/// `β¹ = 2Ω⁻¹` and `β² = (J₊ − J₋)♯⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaResiduals {
    /// `[β¹, β¹]`.
    pub beta1_square: Multivector,
    /// `[β², β²] − 4♯₃⁻¹(J₊dω₊ + J₋dω₋)`.
    pub beta2: Multivector,
    /// `β¹ − 2Ω⁻¹`.
    pub beta1_form: Multivector,
    /// `β² − (J₊ − J₋)♯⁻¹`.
    pub beta2_form: Multivector,
}

impl BetaResiduals {
    pub fn all_zero(&self) -> bool {
        self.beta1_square.is_zero() && self.beta2.is_zero() && self.beta1_form.is_zero() && self.beta2_form.is_zero()
    }
}

pub fn beta_bracket_residuals(pkg: &TamedPackage) -> BetaResiduals {
    let l = &pkg.algebra;
    let (b1, b2) = beta_bivectors(pkg);
    let sum = &pkg.jd_omega_plus() + &pkg.jd_omega_minus();
    let diff = SkewEndo::new(&pkg.j_plus - &pkg.j_minus, pkg.metric.clone()).expect("J± are g-orthogonal");
    let omega_inv = inverse_bivector(&pkg.omega).expect("Ω is nondegenerate");
    BetaResiduals {
        beta1_square: schouten(l, &b1, &b1),
        beta2: &schouten(l, &b2, &b2) - &pkg.metric.sharp_inverse(&sum.scale(&int(4))),
        beta1_form: &b1 - &omega_inv.scale(&int(2)),
        beta2_form: &b2 - &bivector_from_skew(&diff),
    }
}

fn raise_cyclic(pkg: &TamedPackage, t: &Tensor3) -> Multivector {
    let form = t.cyclic_sum().to_form().expect("the assembled tensor is cyclic-skew");
    pkg.metric.sharp_inverse(&form)
}

fn explicit_bracket(pkg: &TamedPackage, nijenhuis_sign: i64) -> Multivector {
    let n = pkg.dim();
    let id = Matrix::identity(n);
    let (jp, jm) = (&pkg.j_plus, &pkg.j_minus);
    let q = pkg.commutator();
    let (nt, skew) = nijenhuis_minus_tensors(pkg);
    let nn = &nt + &skew.scale(&int(3));
    let tp = Tensor3::from_form(&pkg.jd_omega_plus());
    let tm = Tensor3::from_form(&pkg.jd_omega_minus());
    let jpjm = jp * jm;
    let jmjp = jm * jp;
    let n_group = &nn.pullback(&q, jm, jp) + &nn.pullback(&q, jp, jm);
    let p_group = &(&tp.pullback(&q, jm, jp) + &tp.pullback(&q, jp, jm))
        + &(&tp.pullback(&q, &id, &jpjm) + &tp.pullback(&q, &jpjm, &id));
    let m_group = &(&tm.pullback(&q, jm, jp) + &tm.pullback(&q, &id, &jmjp))
        + &(&tm.pullback(&q, &jmjp, &id) + &tm.pullback(&q, jp, jm));
    let total = &(&n_group.scale(&int(nijenhuis_sign)) + &p_group) - &m_group;
    raise_cyclic(pkg, &total)
}

/// `[Q̃, Q̃]` for `Q̃ = bivector_from_skew(Q)`, `Q = [J₊, J₋]`, assembled from
/// `N₋`, its skew part `b̄N₋ = ⅓σN₋` and `J±dω±`:
///
/// `♭[Q̃,Q̃] = σ[(N₋+3b̄N₋)(QX,J₋Y,J₊Z) + (N₋+3b̄N₋)(QX,J₊Y,J₋Z)
///   + J₊dω₊(QX,J₋Y,J₊Z) + J₊dω₊(QX,J₊Y,J₋Z) + J₊dω₊(QX,Y,J₊J₋Z) + J₊dω₊(QX,J₊J₋Y,Z)
///   − J₋dω₋(QX,J₋Y,J₊Z) − J₋dω₋(QX,Y,J₋J₊Z) − J₋dω₋(QX,J₋J₊Y,Z) − J₋dω₋(QX,J₊Y,J₋Z)]`
/// with `N₋` lowered in its first slot by `g`.
pub fn commutator_bracket_formula(pkg: &TamedPackage) -> Multivector {
    explicit_bracket(pkg, 1)
}

/// The same expression with the Nijenhuis group negated. It is not equal to
/// the bracket in general; reports use it to show the size of that sign.
pub fn commutator_bracket_formula_negated_nijenhuis(pkg: &TamedPackage) -> Multivector {
    explicit_bracket(pkg, -1)
}

/// Four-dimensional form of the same bracket:
/// `♭[Q̃,Q̃] = σ[N₋(QX,J₋Y,J₊Z) + N₋(QX,J₊Y,J₋Z) + (J₊dω₊ + J₋dω₋)(QX,Y,QZ)]`.
pub fn surface_bracket_formula(pkg: &TamedPackage) -> Multivector {
    let id = Matrix::identity(pkg.dim());
    let q = pkg.commutator();
    let (nt, _) = nijenhuis_minus_tensors(pkg);
    let jj = Tensor3::from_form(&(&pkg.jd_omega_plus() + &pkg.jd_omega_minus()));
    let total = &(&nt.pullback(&q, &pkg.j_minus, &pkg.j_plus) + &nt.pullback(&q, &pkg.j_plus, &pkg.j_minus))
        + &jj.pullback(&q, &id, &q);
    raise_cyclic(pkg, &total)
}

/// `[Q̃, Q̃]` by the frame route, `Q̃ = bivector_from_skew(Q)`.
pub fn commutator_bracket(pkg: &TamedPackage) -> Multivector {
    let q = commutator_skew(pkg);
    let pi = bivector_from_skew(&q);
    schouten(&pkg.algebra, &pi, &pi)
}

/// `Q = [J₊, J₋]` as a skew endomorphism for `g`.
pub fn commutator_skew(pkg: &TamedPackage) -> SkewEndo {
    SkewEndo::new(pkg.commutator(), pkg.metric.clone()).expect("[J₊, J₋] is g-skew")
}
