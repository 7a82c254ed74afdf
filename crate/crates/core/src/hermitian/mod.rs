//! Taming, the induced bihermitian package, Nijenhuis tensors and the SKT test.
//!
//! Matrix conventions: an endomorphism stores images in its columns
//! (`J e_j = Σ_i J[i][j] e_i`); a bilinear form stores `B[i][j] = B(e_i, e_j)`.
//! An endomorphism acts on k-forms by `(Jα)(X_1, …) = α(J X_1, …, J X_k)`.

pub mod generalized;

use crate::algebra::{half, Form, Matrix, MatrixError, Tensor3, VectorValuedTwoForm};
use crate::lie::LieAlgebra;
use thiserror::Error;

pub use generalized::{build_generalized_pair, GeneralizedEndomorphism, GeneralizedPair, PairCheck};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HermitianError {
    #[error("J does not square to minus the identity")]
    NotAlmostComplex,
    #[error("Omega is not a 2-form of the algebra's dimension")]
    BadOmega,
    #[error("Omega is not closed")]
    NotClosed,
    #[error("Omega is degenerate")]
    Degenerate,
    #[error("Omega does not tame J")]
    NotTaming,
    #[error("metric is not symmetric positive definite")]
    NotMetric,
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlmostComplexStructure(Matrix);

impl AlmostComplexStructure {
    pub fn new(j: Matrix) -> Result<Self, HermitianError> {
        if !j.is_square() || &j * &j != -&Matrix::identity(j.rows()) {
            return Err(HermitianError::NotAlmostComplex);
        }
        Ok(AlmostComplexStructure(j))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }
}

/// Symmetric positive-definite bilinear form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Metric {
    g: Matrix,
    inverse: Matrix,
}

impl Metric {
    pub fn new(g: Matrix) -> Result<Self, HermitianError> {
        if !g.is_positive_definite()? {
            return Err(HermitianError::NotMetric);
        }
        let inverse = g.inverse().expect("positive definite matrices are invertible");
        Ok(Metric { g, inverse })
    }

    pub fn identity(n: usize) -> Self {
        Metric { g: Matrix::identity(n), inverse: Matrix::identity(n) }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.g
    }

    pub fn inverse(&self) -> &Matrix {
        &self.inverse
    }

    pub fn dim(&self) -> usize {
        self.g.rows()
    }

    /// `X ↦ g(X, ·)` applied to every slot of a multivector.
    pub fn lower(&self, m: &crate::algebra::Multivector) -> Form {
        m.map_factors(&self.g.columns())
    }

    /// Raises every index of a form with `g^{-1}`.
    pub fn sharp_inverse(&self, f: &Form) -> crate::algebra::Multivector {
        f.map_factors(&self.inverse.columns())
    }
}

/// `J` acting on a form: `(Jα)(X_1, …) = α(J X_1, …)`.
pub fn act_on_form(j: &Matrix, f: &Form) -> Form {
    f.pullback(j)
}

/// `N(X, Y) = [X, Y] − [JX, JY] + J[JX, Y] + J[X, JY]`.
pub fn nijenhuis(l: &LieAlgebra, j: &Matrix) -> VectorValuedTwoForm {
    let n = l.dim();
    let cols = j.columns();
    VectorValuedTwoForm::from_fn(n, |a, b| {
        let x = crate::algebra::unit(n, a);
        let y = crate::algebra::unit(n, b);
        let t1 = l.bracket(&x, &y);
        let t2 = l.bracket(&cols[a], &cols[b]);
        let t3 = j.apply(&l.bracket(&cols[a], &y));
        let t4 = j.apply(&l.bracket(&x, &cols[b]));
        (0..n).map(|k| &t1[k] - &t2[k] + &t3[k] + &t4[k]).collect()
    })
}

/// Symmetric part of `(X, Y) ↦ Ω(JX, Y)`, i.e. `½(J^T W − W J)` for `W = [Ω]`.
pub fn taming_form(omega: &Form, j: &Matrix) -> Matrix {
    let w = omega.to_matrix();
    (&(&j.transpose() * &w) - &(&w * j)).scale(&half())
}

/// `Ω(JX, X) > 0` for all `X ≠ 0`.
pub fn tames(omega: &Form, j: &Matrix) -> bool {
    taming_form(omega, j).is_positive_definite().unwrap_or(false)
}

/// The bihermitian data induced by a taming symplectic form.
#[derive(Clone, Debug)]
pub struct TamedPackage {
    pub algebra: LieAlgebra,
    pub omega: Form,
    pub j_plus: Matrix,
    pub j_minus: Matrix,
    pub metric: Metric,
    pub b: Form,
    pub omega_plus: Form,
    pub omega_minus: Form,
}

impl TamedPackage {
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn g(&self) -> &Matrix {
        self.metric.matrix()
    }

    /// Bilinear matrix of Ω.
    pub fn omega_matrix(&self) -> Matrix {
        self.omega.to_matrix()
    }

    /// `Q = [J₊, J₋] = J₊J₋ − J₋J₊`.
    pub fn commutator(&self) -> Matrix {
        self.j_plus.commutator(&self.j_minus)
    }

    pub fn n_plus(&self) -> VectorValuedTwoForm {
        nijenhuis(&self.algebra, &self.j_plus)
    }

    pub fn n_minus(&self) -> VectorValuedTwoForm {
        nijenhuis(&self.algebra, &self.j_minus)
    }

    pub fn d_omega_plus(&self) -> Form {
        self.algebra.exterior_derivative(&self.omega_plus)
    }

    pub fn d_omega_minus(&self) -> Form {
        self.algebra.exterior_derivative(&self.omega_minus)
    }

    /// `J₊ dω₊`.
    pub fn jd_omega_plus(&self) -> Form {
        act_on_form(&self.j_plus, &self.d_omega_plus())
    }

    /// `J₋ dω₋`.
    pub fn jd_omega_minus(&self) -> Form {
        act_on_form(&self.j_minus, &self.d_omega_minus())
    }

    pub fn db(&self) -> Form {
        self.algebra.exterior_derivative(&self.b)
    }

    /// Lists every violated package invariant (empty when all hold).
    pub fn invariant_violations(&self) -> Vec<&'static str> {
        let n = self.dim();
        let id = Matrix::identity(n);
        let w = self.omega_matrix();
        let g = self.g();
        let bm = self.b.to_matrix();
        let mut bad = Vec::new();
        if !self.algebra.exterior_derivative(&self.omega).is_zero() {
            bad.push("dOmega = 0");
        }
        if &self.j_minus * &self.j_minus != -&id {
            bad.push("J-^2 = -1");
        }
        if self.j_minus != (-&(&(&w.inverse().expect("nondegenerate") * &self.j_plus.transpose()) * &w)) {
            bad.push("J- = -Omega^-1 J+* Omega");
        }
        if !g.is_symmetric() || !g.is_positive_definite().unwrap_or(false) {
            bad.push("g symmetric positive definite");
        }
        if !bm.is_antisymmetric() {
            bad.push("b skew");
        }
        // (X, Y) ↦ Ω(J X, Y) has matrix J^T W.
        if (g - &bm) != (&self.j_plus.transpose() * &w) {
            bad.push("g - b = Omega J+");
        }
        if (g + &bm) != (&self.j_minus.transpose() * &w) {
            bad.push("g + b = Omega J-");
        }
        if (&self.j_plus.transpose() * &w) != (-&(&w * &self.j_minus)) {
            bad.push("Omega J+ = -J-* Omega");
        }
        if (&self.j_minus.transpose() * &w) != (-&(&w * &self.j_plus)) {
            bad.push("Omega J- = -J+* Omega");
        }
        for (j, name) in [(&self.j_plus, "g(J+X, J+Y) = g(X, Y)"), (&self.j_minus, "g(J-X, J-Y) = g(X, Y)")] {
            if &(&j.transpose() * g) * j != *g {
                bad.push(name);
            }
        }
        if self.omega_plus.to_matrix() != g * &self.j_plus {
            bad.push("omega+ = g(., J+ .)");
        }
        if self.omega_minus.to_matrix() != g * &self.j_minus {
            bad.push("omega- = g(., J- .)");
        }
        // g = ½Ω(J₊ + J₋) with Ω(J X, Y) read as the bilinear matrix J^T W.
        let alt = (&(&self.j_plus + &self.j_minus).transpose() * &w).scale(&half());
        if alt != *g {
            bad.push("g = 1/2 Omega (J+ + J-)");
        }
        bad
    }
}

/// Builds `(J₋, g, b, ω±)` from a closed taming form and `J₊`.
///
/// `J₊` need not be integrable; integrability is reported separately.
pub fn induce_tamed_package(l: &LieAlgebra, omega: &Form, j_plus: &Matrix) -> Result<TamedPackage, HermitianError> {
    let n = l.dim();
    if omega.dim() != n || omega.grade() != 2 {
        return Err(HermitianError::BadOmega);
    }
    let j_plus = AlmostComplexStructure::new(j_plus.clone())?.0;
    if j_plus.rows() != n {
        return Err(HermitianError::NotAlmostComplex);
    }
    if !l.exterior_derivative(omega).is_zero() {
        return Err(HermitianError::NotClosed);
    }
    let w = omega.to_matrix();
    let w_inv = w.inverse().ok_or(HermitianError::Degenerate)?;
    if !tames(omega, &j_plus) {
        return Err(HermitianError::NotTaming);
    }
    let jt = j_plus.transpose();
    let j_minus = -&(&(&w_inv * &jt) * &w);
    let g = taming_form(omega, &j_plus);
    let b = (&(&jt * &w) + &(&w * &j_plus)).scale(&-half());
    let omega_plus = Form::from_matrix(&(&g * &j_plus));
    let omega_minus = Form::from_matrix(&(&g * &j_minus));
    Ok(TamedPackage {
        algebra: l.clone(),
        omega: omega.clone(),
        j_plus,
        j_minus,
        metric: Metric::new(g)?,
        b: Form::from_matrix(&b),
        omega_plus,
        omega_minus,
    })
}

/// `(X, Y, Z) ↦ Ω(A X, N(Y, Z))`.
pub fn omega_against_nijenhuis(omega: &Form, a: &Matrix, n: &VectorValuedTwoForm) -> Tensor3 {
    n.lower(&(&a.transpose() * &omega.to_matrix()))
}

/// The torsion-defect residuals relating `J±dω±`, `db` and `N∓`:
///
/// `plus  = (−J₊dω₊ + db) − ½σ Ω(J₋X, N₊(Y, Z))`
/// `minus = (−J₋dω₋ − db) − ½σ Ω(J₊X, N₋(Y, Z))`
///
/// Both vanish identically for every tamed package.
pub fn torsion_defect_residuals(pkg: &TamedPackage) -> (Form, Form) {
    let db = pkg.db();
    let cyc = |a: &Matrix, n: &VectorValuedTwoForm| {
        omega_against_nijenhuis(&pkg.omega, a, n)
            .cyclic_sum()
            .scale(&half())
            .to_form()
            .expect("cyclic sum of a tensor skew in its last slots is a form")
    };
    let plus = &(&db - &pkg.jd_omega_plus()) - &cyc(&pkg.j_minus, &pkg.n_plus());
    let minus = &(&-&pkg.jd_omega_minus() - &db) - &cyc(&pkg.j_plus, &pkg.n_minus());
    (plus, minus)
}

/// `d(J₊dω₊) = 0`.
pub fn skt_check(pkg: &TamedPackage) -> bool {
    pkg.algebra.exterior_derivative(&pkg.jd_omega_plus()).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat, unit};
    use crate::lie::parse_structure_file;

    fn torus() -> (LieAlgebra, Form, Matrix) {
        let p = parse_structure_file(
            "dim = 4\nJ(e1) = -e2\nJ(e2) = e1\nJ(e3) = -e4\nJ(e4) = e3\nOmega = e12 + e34\n",
        )
        .unwrap();
        (p.algebra, p.forms["Omega"].clone(), p.endomorphisms["J"].clone())
    }

    #[test]
    fn kahler_torus_package() {
        let (l, omega, j) = torus();
        let pkg = induce_tamed_package(&l, &omega, &j).unwrap();
        assert_eq!(pkg.j_minus, j);
        assert!(pkg.b.is_zero());
        assert_eq!(pkg.g(), &Matrix::identity(4));
        assert!(pkg.invariant_violations().is_empty());
        assert!(skt_check(&pkg));
        let (p, m) = torsion_defect_residuals(&pkg);
        assert!(p.is_zero() && m.is_zero());
    }

    #[test]
    fn torsion_defects_vanish_on_fixtures() {
        for (name, text) in crate::fixtures::ALL {
            let p = parse_structure_file(text).unwrap();
            let pkg = induce_tamed_package(&p.algebra, &p.forms["Omega"], &p.endomorphisms["J"]).unwrap();
            assert!(pkg.invariant_violations().is_empty(), "{name}");
            let (plus, minus) = torsion_defect_residuals(&pkg);
            assert!(plus.is_zero(), "{name}: {plus}");
            assert!(minus.is_zero(), "{name}: {minus}");
        }
    }

    #[test]
    fn reversed_j_is_not_tamed() {
        let (l, omega, j) = torus();
        assert!(!tames(&omega, &-&j));
        assert_eq!(
            induce_tamed_package(&l, &omega, &-&j).unwrap_err(),
            HermitianError::NotTaming
        );
    }

    #[test]
    fn rejects_non_complex_structure() {
        assert_eq!(
            AlmostComplexStructure::new(Matrix::identity(2)).unwrap_err(),
            HermitianError::NotAlmostComplex
        );
    }

    #[test]
    fn nijenhuis_vanishes_on_abelian_algebras() {
        let (l, _, j) = torus();
        assert!(nijenhuis(&l, &j).is_zero());
    }

    #[test]
    fn metric_raises_and_lowers() {
        let g = Metric::new(Matrix::from_rows(vec![
            vec![int(2), rat(1, 2)],
            vec![rat(1, 2), int(1)],
        ]))
        .unwrap();
        let f = Form::basis(2, &[0, 1]);
        assert_eq!(g.lower(&g.sharp_inverse(&f)), f);
        assert!(Metric::new(-&Matrix::identity(2)).is_err());
        assert_eq!(act_on_form(&Matrix::identity(2), &f), f);
        let _ = unit(2, 0);
    }
}
