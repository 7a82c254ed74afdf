//! The generalized almost Kähler pair on `T ⊕ T*` induced by a tamed package.
//!
//! Block convention for a vector `(X, ξ)`: the 2n×2n matrix is
//! `[[T→T, T*→T], [T→T*, T*→T*]]`. Lowering maps: Ω and ω± send
//! `X ↦ ι_X(·)`, and `b` sends `X ↦ b(·, X)`; `J*` acts by the transpose.
//! With these choices the first structure is exactly `𝒥_Ω`.

use super::{HermitianError, TamedPackage};
use crate::algebra::{half, int, Matrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedEndomorphism {
    n: usize,
    m: Matrix,
}

impl GeneralizedEndomorphism {
    pub fn from_blocks(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Self {
        GeneralizedEndomorphism { n: a.rows(), m: Matrix::block(a, b, c, d) }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.m
    }

    /// `(T→T, T*→T, T→T*, T*→T*)`.
    pub fn blocks(&self) -> [Matrix; 4] {
        let n = self.n;
        [
            self.m.sub_block(0, 0, n, n),
            self.m.sub_block(0, n, n, n),
            self.m.sub_block(n, 0, n, n),
            self.m.sub_block(n, n, n, n),
        ]
    }

    pub fn compose(&self, other: &Self) -> Self {
        GeneralizedEndomorphism { n: self.n, m: &self.m * &other.m }
    }

    pub fn squares_to_minus_one(&self) -> bool {
        &self.m * &self.m == -&Matrix::identity(2 * self.n)
    }

    /// Orthogonal for `⟨X + ξ, Y + η⟩ = ½(ξ(Y) + η(X))`.
    pub fn is_orthogonal(&self) -> bool {
        let p = pairing(self.n);
        &(&self.m.transpose() * &p) * &self.m == p
    }
}

/// Matrix of the natural pairing `½(ξ(Y) + η(X))`.
pub fn pairing(n: usize) -> Matrix {
    let z = Matrix::zeros(n, n);
    let h = Matrix::identity(n).scale(&half());
    Matrix::block(&z, &h, &h, &z)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedPair {
    pub j1: GeneralizedEndomorphism,
    pub j2: GeneralizedEndomorphism,
}

impl GeneralizedPair {
    /// `𝒢 = −𝒥₁𝒥₂`.
    pub fn metric(&self) -> GeneralizedEndomorphism {
        let g = self.j1.compose(&self.j2);
        GeneralizedEndomorphism { n: g.n, m: -&g.m }
    }
}

struct Lowerings {
    omega: Matrix,
    omega_plus: Matrix,
    omega_minus: Matrix,
    b: Matrix,
}

fn lowerings(pkg: &TamedPackage) -> Lowerings {
    Lowerings {
        omega: pkg.omega_matrix().transpose(),
        omega_plus: pkg.omega_plus.to_matrix().transpose(),
        omega_minus: pkg.omega_minus.to_matrix().transpose(),
        b: pkg.b.to_matrix(),
    }
}

fn inverse(m: &Matrix) -> Result<Matrix, HermitianError> {
    m.inverse().ok_or(HermitianError::Degenerate)
}

/// Builds `(𝒥₁, 𝒥₂)` from `(g, b, J₊, J₋)` through the b-shear of the
/// bihermitian blocks.
pub fn build_generalized_pair(pkg: &TamedPackage) -> Result<GeneralizedPair, HermitianError> {
    let n = pkg.dim();
    let low = lowerings(pkg);
    let id = Matrix::identity(n);
    let z = Matrix::zeros(n, n);
    let shear_in = Matrix::block(&id, &z, &low.b, &id);
    let shear_out = Matrix::block(&id, &z, &-&low.b, &id);
    let wp_inv = inverse(&low.omega_plus)?;
    let wm_inv = inverse(&low.omega_minus)?;
    let (jp, jm) = (&pkg.j_plus, &pkg.j_minus);
    let (jpt, jmt) = (jp.transpose(), jm.transpose());

    let core1 = Matrix::block(
        &(jm - jp),
        &(&wm_inv + &wp_inv),
        &-&(&low.omega_minus + &low.omega_plus),
        &-&(&jmt - &jpt),
    );
    let core2 = Matrix::block(
        &(jm + jp),
        &(&wm_inv - &wp_inv),
        &-&(&low.omega_minus - &low.omega_plus),
        &-&(&jmt + &jpt),
    );
    let sandwich = |core: &Matrix| {
        let m = (&(&shear_out * core) * &shear_in).scale(&half());
        GeneralizedEndomorphism { n, m }
    };
    Ok(GeneralizedPair { j1: sandwich(&core1), j2: sandwich(&core2) })
}

/// `𝒥_Ω = [[0, Ω⁻¹], [−Ω, 0]]`.
pub fn j_omega(pkg: &TamedPackage) -> Result<GeneralizedEndomorphism, HermitianError> {
    let low = lowerings(pkg);
    let z = Matrix::zeros(pkg.dim(), pkg.dim());
    Ok(GeneralizedEndomorphism::from_blocks(&z, &inverse(&low.omega)?, &-&low.omega, &z))
}

/// Closed form of `𝒥₂` in terms of `Ω` and `J±`, with the off-diagonal signs
/// forced by `𝒥₁ = 𝒥_Ω`:
/// `[[−2(J₊+J₋)⁻¹, Ω⁻¹(J₊*−J₋*)(J₊*+J₋*)⁻¹], [Ω(J₊−J₋)(J₊+J₋)⁻¹, 2(J₊*+J₋*)⁻¹]]`.
pub fn j2_closed_form(pkg: &TamedPackage) -> Result<GeneralizedEndomorphism, HermitianError> {
    j2_closed_form_with_sign(pkg, int(1))
}

/// The same closed form with both off-diagonal blocks negated. No choice of
/// lowering conventions makes this agree with the shear construction while
/// keeping `𝒥₁ = 𝒥_Ω`; it is kept so reports can show the discrepancy.
pub fn j2_closed_form_negated_off_diagonal(pkg: &TamedPackage) -> Result<GeneralizedEndomorphism, HermitianError> {
    j2_closed_form_with_sign(pkg, int(-1))
}

fn j2_closed_form_with_sign(
    pkg: &TamedPackage,
    off: crate::algebra::Rational,
) -> Result<GeneralizedEndomorphism, HermitianError> {
    let low = lowerings(pkg);
    let (jp, jm) = (&pkg.j_plus, &pkg.j_minus);
    let (jpt, jmt) = (jp.transpose(), jm.transpose());
    let sum_inv = inverse(&(jp + jm))?;
    let sum_t_inv = inverse(&(&jpt + &jmt))?;
    let a = sum_inv.scale(&int(-2));
    let b = (&(&inverse(&low.omega)? * &(&jpt - &jmt)) * &sum_t_inv).scale(&off);
    let c = (&(&low.omega * &(jp - jm)) * &sum_inv).scale(&off);
    let d = sum_t_inv.scale(&int(2));
    Ok(GeneralizedEndomorphism::from_blocks(&a, &b, &c, &d))
}

/// Outcome of every structural check on a generalized pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCheck {
    pub j1_is_j_omega: bool,
    pub j2_closed_form: bool,
    pub squares: bool,
    pub orthogonal: bool,
    pub commute: bool,
    pub metric_positive: bool,
}

impl PairCheck {
    pub fn all(&self) -> bool {
        self.j1_is_j_omega && self.j2_closed_form && self.squares && self.orthogonal && self.commute && self.metric_positive
    }
}

pub fn check_pair(pkg: &TamedPackage, pair: &GeneralizedPair) -> Result<PairCheck, HermitianError> {
    let n = pkg.dim();
    let g = pair.metric();
    let pg = &pairing(n) * g.matrix();
    Ok(PairCheck {
        j1_is_j_omega: pair.j1 == j_omega(pkg)?,
        j2_closed_form: pair.j2 == j2_closed_form(pkg)?,
        squares: pair.j1.squares_to_minus_one() && pair.j2.squares_to_minus_one(),
        orthogonal: pair.j1.is_orthogonal() && pair.j2.is_orthogonal(),
        commute: pair.j1.compose(&pair.j2) == pair.j2.compose(&pair.j1),
        metric_positive: pg.is_symmetric() && pg.is_positive_definite().unwrap_or(false),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::induce_tamed_package;
    use crate::lie::parse_structure_file;

    #[test]
    fn kahler_torus_pair() {
        let p = parse_structure_file(
            "dim = 4\nJ(e1) = -e2\nJ(e2) = e1\nJ(e3) = -e4\nJ(e4) = e3\nOmega = e12 + e34\n",
        )
        .unwrap();
        let j = p.endomorphisms["J"].clone();
        let pkg = induce_tamed_package(&p.algebra, &p.forms["Omega"], &j).unwrap();
        let pair = build_generalized_pair(&pkg).unwrap();
        let z = Matrix::zeros(4, 4);
        let expected = GeneralizedEndomorphism::from_blocks(&j, &z, &z, &-&j.transpose());
        assert_eq!(pair.j2, expected);
        assert!(check_pair(&pkg, &pair).unwrap().all());
    }
}
