//! Seeded random instances for property suites.

use crate::algebra::{rat, Form, Matrix, Rational};
use crate::hermitian::{induce_tamed_package, Metric, TamedPackage};
use crate::lie::LieAlgebra;
use crate::poisson::SkewEndo;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-4..=4), rng.gen_range(1..=3))
}

/// Up to `count` tamed packages `(L, Ω, J)` with `Ω = base + Σ c_k ω_k` over
/// a basis of closed 2-forms, keeping only the taming ones. Perturbations
/// start small and grow, so instances move away from `base` quickly.
pub fn random_tamed_packages(l: &LieAlgebra, j: &Matrix, base: &Form, count: usize, seed: u64) -> Vec<TamedPackage> {
    let basis = l.closed_forms_basis(2);
    let mut rng = rng(seed);
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0;
    while out.len() < count && attempts < 200 * count.max(1) {
        attempts += 1;
        let damp = rat(1, 1 + (out.len() % 3) as i64);
        let mut omega = base.clone();
        for b in &basis {
            if rng.gen_bool(0.6) {
                omega = &omega + &b.scale(&(small_rational(&mut rng) * &damp));
            }
        }
        if let Ok(pkg) = induce_tamed_package(l, &omega, j) {
            out.push(pkg);
        }
    }
    out
}

/// Random positive-definite metric `MᵀM` with `M` unit upper triangular and
/// small integer entries, so `det g = 1` and `g⁻¹` stays integral.
pub fn random_metric(n: usize, rng: &mut ChaCha8Rng) -> Metric {
    let m = Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => rat(1, 1),
        std::cmp::Ordering::Less => rat(rng.gen_range(-2..=2), 1),
        std::cmp::Ordering::Greater => rat(0, 1),
    });
    Metric::new(&m.transpose() * &m).expect("MᵀM is positive definite for invertible M")
}

/// `Q = g⁻¹A` for a random skew matrix `A`, so `g(QX, Y) = −g(X, QY)`.
pub fn random_skew_endo(metric: &Metric, rng: &mut ChaCha8Rng) -> SkewEndo {
    let n = metric.dim();
    let mut a = Matrix::zeros(n, n);
    for i in 0..n {
        for k in i + 1..n {
            let x = small_rational(rng);
            a.set(k, i, -x.clone());
            a.set(i, k, x);
        }
    }
    SkewEndo::new(metric.inverse() * &a, metric.clone()).expect("g⁻¹A is g-skew")
}

/// Like [`random_skew_endo`] but redrawn until `Q` is invertible (even `n`).
pub fn random_invertible_skew_endo(metric: &Metric, rng: &mut ChaCha8Rng) -> SkewEndo {
    assert!(metric.dim().is_multiple_of(2), "skew endomorphisms are singular in odd dimension");
    loop {
        let q = random_skew_endo(metric, rng);
        if q.matrix().rank() == metric.dim() {
            return q;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::parse_structure_file;

    #[test]
    fn sampling_is_deterministic_and_valid() {
        let p = parse_structure_file(crate::fixtures::HYPERELLIPTIC).unwrap();
        let a = random_tamed_packages(&p.algebra, &p.endomorphisms["J"], &p.forms["Omega"], 5, 3);
        let b = random_tamed_packages(&p.algebra, &p.endomorphisms["J"], &p.forms["Omega"], 5, 3);
        assert_eq!(a.len(), 5);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.omega, y.omega);
            assert!(x.invariant_violations().is_empty());
        }
        assert!(a.iter().any(|x| x.omega != p.forms["Omega"]));
    }
}
