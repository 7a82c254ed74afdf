//! `Im(Q)` and restriction of the invertible-case machinery to it.

use super::{PoissonError, SkewEndo};
use crate::algebra::{Matrix, Rational};
use crate::hermitian::Metric;
use crate::lie::LieAlgebra;
use num_traits::Zero;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImageReport {
    pub rank: usize,
    /// Reduced row-echelon basis of `Im(Q)`.
    pub image: Vec<Vec<Rational>>,
    pub kernel: Vec<Vec<Rational>>,
    /// `g(Im Q, Ker Q) = 0`.
    pub orthogonal: bool,
    pub involutive: bool,
    /// `Im(Q)` closed under the bracket with structure constants solvable in
    /// the image basis.
    pub subalgebra: bool,
    /// In dimension 4, whether `rank ∈ {0, 4}`.
    pub dichotomy: Option<bool>,
}

pub fn image_analysis(l: &LieAlgebra, q: &SkewEndo) -> ImageReport {
    let m = q.matrix();
    let n = m.rows();
    let (r, pivots) = m.transpose().rref();
    let image: Vec<Vec<Rational>> = (0..pivots.len()).map(|i| r.row(i)).collect();
    let kernel = m.nullspace();
    let g = q.metric().matrix();
    let orthogonal = image.iter().all(|x| kernel.iter().all(|y| g.bilinear(x, y).is_zero()));
    let rank = image.len();
    ImageReport {
        rank,
        involutive: l.span_involutive(&image),
        subalgebra: l.subalgebra(&image).is_ok(),
        orthogonal,
        dichotomy: (n == 4).then_some(rank == 0 || rank == 4),
        image,
        kernel,
    }
}

/// The subalgebra `Im(Q)` with restricted metric and `Q`.
#[derive(Clone, Debug)]
pub struct Leaf {
    pub algebra: LieAlgebra,
    /// Columns: the image basis in ambient coordinates.
    pub basis: Matrix,
    pub metric: Metric,
    pub q: SkewEndo,
}

impl Leaf {
    /// Matrix of `A|_L` in the leaf basis, if `A` preserves the span.
    pub fn restrict(&self, a: &Matrix) -> Result<Matrix, PoissonError> {
        self.basis.solve(&(a * &self.basis)).ok_or(PoissonError::NotInvariant)
    }

    /// `A|_L` as a skew endomorphism of the restricted metric.
    pub fn restrict_skew(&self, a: &Matrix) -> Result<SkewEndo, PoissonError> {
        SkewEndo::new(self.restrict(a)?, self.metric.clone())
    }
}

pub fn restrict_to_image(l: &LieAlgebra, q: &SkewEndo) -> Result<Leaf, PoissonError> {
    let report = image_analysis(l, q);
    if report.rank == 0 {
        return Err(PoissonError::NotSubalgebra);
    }
    let algebra = l.subalgebra(&report.image).map_err(|_| PoissonError::NotSubalgebra)?;
    let basis = Matrix::from_columns(&report.image);
    let g = &(&basis.transpose() * q.metric().matrix()) * &basis;
    let metric = Metric::new(g).expect("restriction of a metric is a metric");
    let mut leaf = Leaf { algebra, basis, metric: metric.clone(), q: q.clone() };
    leaf.q = SkewEndo::new(leaf.restrict(q.matrix())?, metric)?;
    Ok(leaf)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_endomorphism() {
        let l = LieAlgebra::abelian(4);
        let q = SkewEndo::new(Matrix::zeros(4, 4), Metric::identity(4)).unwrap();
        let r = image_analysis(&l, &q);
        assert_eq!((r.rank, r.kernel.len(), r.dichotomy), (0, 4, Some(true)));
        assert!(r.orthogonal && r.involutive && r.subalgebra);
        assert!(restrict_to_image(&l, &q).is_err());
    }
}
