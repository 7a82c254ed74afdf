//! The tensor `ψ = Ω(·, N₋(·,·))`, its `(3,0)` part and the holomorphy test.

use crate::algebra::{half, ComplexTensor3, Matrix, PsiTensor, Tensor3, VectorValuedTwoForm};
use crate::connections::{chern, ConnectionError};
use crate::hermitian::TamedPackage;

/// `ψ(X, Y, Z) = Ω(X, N₋(Y, Z))`.
pub fn psi_tensor(pkg: &TamedPackage) -> PsiTensor {
    PsiTensor::from_tensor(&psi_dense(pkg)).expect("N₋ is antisymmetric")
}

fn psi_dense(pkg: &TamedPackage) -> Tensor3 {
    pkg.n_minus().lower(&pkg.omega_matrix())
}

/// `𝔑(Y, Z) = N₋(Y,Z) + J₋N₋(J₊Y,Z) + J₋N₋(Y,J₊Z) − N₋(J₊Y,J₊Z)`.
pub fn frak_n(pkg: &TamedPackage) -> VectorValuedTwoForm {
    let id = Matrix::identity(pkg.dim());
    let (jp, jm) = (&pkg.j_plus, &pkg.j_minus);
    let nm = pkg.n_minus();
    let mixed = nm.pullback(jp, &id).add(&nm.pullback(&id, jp)).compose(jm);
    nm.add(&mixed).add(&nm.pullback(jp, jp).scale(&-crate::algebra::one()))
}

/// `(re, im)` of `ψ(X − iJ₊X, Y − iJ₊Y, Z − iJ₊Z)`:
/// `re = ψ − ψ(JX,JY,Z) − ψ(JX,Y,JZ) − ψ(X,JY,JZ)`,
/// `im = ψ(JX,JY,JZ) − ψ(JX,Y,Z) − ψ(X,JY,Z) − ψ(X,Y,JZ)`.
pub fn psi_30(pkg: &TamedPackage) -> ComplexTensor3 {
    let psi = psi_dense(pkg);
    let id = Matrix::identity(pkg.dim());
    let j = &pkg.j_plus;
    let re = &(&(&psi - &psi.pullback(j, j, &id)) - &psi.pullback(j, &id, j)) - &psi.pullback(&id, j, j);
    let im = &(&(&psi.pullback(j, j, j) - &psi.pullback(j, &id, &id)) - &psi.pullback(&id, j, &id))
        - &psi.pullback(&id, &id, j);
    ComplexTensor3 { re, im }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Holomorphy {
    pub frak_n: VectorValuedTwoForm,
    pub psi_30: ComplexTensor3,
    /// `psi_30` agrees with `(Ω(X, 𝔑(Y,Z)), −Ω(J₊X, 𝔑(Y,Z)))`.
    pub cross_check: bool,
    /// `𝔑 = 0`.
    pub holomorphic: bool,
}

pub fn holomorphy(pkg: &TamedPackage) -> Holomorphy {
    let f = frak_n(pkg);
    let psi_30 = psi_30(pkg);
    let w = pkg.omega_matrix();
    let re = f.lower(&w);
    let im = -&f.lower(&(&pkg.j_plus.transpose() * &w));
    let cross_check = psi_30.re == re && psi_30.im == im && (f.is_zero() == psi_30.is_zero());
    Holomorphy { holomorphic: f.is_zero(), frak_n: f, psi_30, cross_check }
}

/// Residuals of the Chern-derivative identities, with
/// `T(X, Y, Z) = g((D⁺_X Q) Y, Z)` and `J = J₊`:
///
/// real: `2T(X,Y,Z) − 2T(JX,Y,JZ) − [ψ(JX,JY,JZ) − ψ(JX,Y,Z) − ψ(X,JY,Z) − ψ(X,Y,JZ)]`;
/// complex: `[T(X,Y,Z) − T(JX,Y,JZ)] + i[T(X,Y,JZ) + T(JX,Y,Z)] − (i/2)·ψ(X+iJX, Y+iJY, Z+iJZ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChernDerivativeResiduals {
    pub real: Tensor3,
    pub complex: ComplexTensor3,
}

impl ChernDerivativeResiduals {
    pub fn is_zero(&self) -> bool {
        self.real.is_zero() && self.complex.is_zero()
    }
}

pub fn chern_derivative_residuals(pkg: &TamedPackage) -> Result<ChernDerivativeResiduals, ConnectionError> {
    let d = chern(pkg)?;
    let n = pkg.dim();
    let g = pkg.g();
    let q = pkg.commutator();
    let lowered: Vec<Matrix> = (0..n)
        .map(|i| &d.derivative_of_endomorphism(&crate::algebra::unit(n, i), &q).transpose() * g)
        .collect();
    let t = Tensor3::from_fn(n, |a, b, c| lowered[a].get(b, c).clone());
    let id = Matrix::identity(n);
    let j = &pkg.j_plus;
    let lhs_re = &t - &t.pullback(j, &id, j);
    let lhs_im = &t.pullback(&id, &id, j) + &t.pullback(j, &id, &id);
    let p = psi_30(pkg);
    let real = &lhs_re.scale(&crate::algebra::int(2)) - &p.im;
    // ψ(X+iJX, …) = re − i·im, so (i/2)ψ(X+iJX, …) = (im/2, re/2).
    let rhs = ComplexTensor3 { re: p.im.scale(&half()), im: p.re.scale(&half()) };
    let complex = ComplexTensor3 { re: lhs_re, im: lhs_im }.sub(&rhs);
    Ok(ChernDerivativeResiduals { real, complex })
}
