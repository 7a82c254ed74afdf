//! Dense (not necessarily alternating) tensors used by the identity checks.

use super::alternating::{Form, Multivector};
use super::matrix::Matrix;
use super::rational::{dot, zero, Rational};
use num_traits::Zero;
use std::ops::{Add, Neg, Sub};

/// Covariant 3-tensor, `T(e_a, e_b, e_c) = data[(a n + b) n + c]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tensor3 {
    dim: usize,
    data: Vec<Rational>,
}

impl Tensor3 {
    pub fn zero(dim: usize) -> Self {
        Tensor3 { dim, data: vec![zero(); dim * dim * dim] }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(dim * dim * dim);
        for a in 0..dim {
            for b in 0..dim {
                for c in 0..dim {
                    data.push(f(a, b, c));
                }
            }
        }
        Tensor3 { dim, data }
    }

    pub fn from_form(form: &Form) -> Self {
        assert_eq!(form.grade(), 3);
        let n = form.dim();
        let mut t = Tensor3::zero(n);
        for (idx, c) in form.terms() {
            let (i, j, k) = (idx[0], idx[1], idx[2]);
            for (p, s) in [
                ([i, j, k], 1),
                ([j, k, i], 1),
                ([k, i, j], 1),
                ([j, i, k], -1),
                ([i, k, j], -1),
                ([k, j, i], -1),
            ] {
                let v = if s > 0 { c.clone() } else { -c.clone() };
                t.data[(p[0] * n + p[1]) * n + p[2]] = v;
            }
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, a: usize, b: usize, c: usize) -> &Rational {
        &self.data[(a * self.dim + b) * self.dim + c]
    }

    pub fn eval(&self, x: &[Rational], y: &[Rational], z: &[Rational]) -> Rational {
        let n = self.dim;
        let mut total = zero();
        for a in 0..n {
            if x[a].is_zero() {
                continue;
            }
            for b in 0..n {
                if y[b].is_zero() {
                    continue;
                }
                let row = &self.data[(a * n + b) * n..(a * n + b + 1) * n];
                let s = dot(row, z);
                if !s.is_zero() {
                    total += &x[a] * &y[b] * s;
                }
            }
        }
        total
    }

    /// `(X, Y, Z) ↦ T(A X, B Y, C Z)` by three mode products.
    pub fn pullback(&self, a: &Matrix, b: &Matrix, c: &Matrix) -> Tensor3 {
        let n = self.dim;
        let idx = |p: usize, q: usize, r: usize| (p * n + q) * n + r;
        let mut u = vec![zero(); n * n * n];
        for i in 0..n {
            for x in 0..n {
                let m = a.get(i, x);
                if m.is_zero() {
                    continue;
                }
                for j in 0..n {
                    for k in 0..n {
                        let t = &self.data[idx(i, j, k)];
                        if !t.is_zero() {
                            u[idx(x, j, k)] += m * t;
                        }
                    }
                }
            }
        }
        let mut v = vec![zero(); n * n * n];
        for j in 0..n {
            for y in 0..n {
                let m = b.get(j, y);
                if m.is_zero() {
                    continue;
                }
                for x in 0..n {
                    for k in 0..n {
                        let t = &u[idx(x, j, k)];
                        if !t.is_zero() {
                            v[idx(x, y, k)] += m * t;
                        }
                    }
                }
            }
        }
        let mut w = vec![zero(); n * n * n];
        for k in 0..n {
            for z in 0..n {
                let m = c.get(k, z);
                if m.is_zero() {
                    continue;
                }
                for x in 0..n {
                    for y in 0..n {
                        let t = &v[idx(x, y, k)];
                        if !t.is_zero() {
                            w[idx(x, y, z)] += m * t;
                        }
                    }
                }
            }
        }
        Tensor3 { dim: n, data: w }
    }

    /// `T'(X, Y, Z) = T(σ X, σ Y, σ Z)` with slots permuted: `perm[s]` names
    /// the argument that goes into slot `s`.
    pub fn permute(&self, perm: [usize; 3]) -> Tensor3 {
        Tensor3::from_fn(self.dim, |a, b, c| {
            let args = [a, b, c];
            self.get(args[perm[0]], args[perm[1]], args[perm[2]]).clone()
        })
    }

    /// `(σT)(X,Y,Z) = T(X,Y,Z) + T(Y,Z,X) + T(Z,X,Y)`.
    pub fn cyclic_sum(&self) -> Tensor3 {
        &(self + &self.permute([1, 2, 0])) + &self.permute([2, 0, 1])
    }

    pub fn scale(&self, c: &Rational) -> Tensor3 {
        Tensor3 { dim: self.dim, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// First basis triple with a nonzero entry.
    pub fn witness(&self) -> Option<([usize; 3], Rational)> {
        let n = self.dim;
        self.data.iter().position(|x| !x.is_zero()).map(|p| {
            ([p / (n * n), (p / n) % n, p % n], self.data[p].clone())
        })
    }

    /// The 3-form this tensor equals, or the first triple breaking total
    /// antisymmetry.
    pub fn to_form(&self) -> Result<Form, [usize; 3]> {
        let n = self.dim;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let v = self.get(a, b, c);
                    if *v != -self.get(b, a, c).clone() || *v != -self.get(a, c, b).clone() {
                        return Err([a, b, c]);
                    }
                }
            }
        }
        let mut out = Form::zero(n, 3);
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    out.add_term(&[a, b, c], self.get(a, b, c).clone());
                }
            }
        }
        Ok(out)
    }

    /// Nonzero entries as `(a, b, c, value)`, lexicographic.
    pub fn entries(&self) -> Vec<([usize; 3], Rational)> {
        let n = self.dim;
        self.data
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(p, x)| ([p / (n * n), (p / n) % n, p % n], x.clone()))
            .collect()
    }
}

impl Add for &Tensor3 {
    type Output = Tensor3;
    fn add(self, rhs: &Tensor3) -> Tensor3 {
        assert_eq!(self.dim, rhs.dim);
        Tensor3 { dim: self.dim, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &Tensor3 {
    type Output = Tensor3;
    fn sub(self, rhs: &Tensor3) -> Tensor3 {
        assert_eq!(self.dim, rhs.dim);
        Tensor3 { dim: self.dim, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &Tensor3 {
    type Output = Tensor3;
    fn neg(self) -> Tensor3 {
        Tensor3 { dim: self.dim, data: self.data.iter().map(|a| -a).collect() }
    }
}

/// Complex 3-tensor as an exact (real, imaginary) pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexTensor3 {
    pub re: Tensor3,
    pub im: Tensor3,
}

impl ComplexTensor3 {
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Multiplication by `i`.
    pub fn times_i(&self) -> ComplexTensor3 {
        ComplexTensor3 { re: -&self.im, im: self.re.clone() }
    }

    pub fn scale(&self, c: &Rational) -> ComplexTensor3 {
        ComplexTensor3 { re: self.re.scale(c), im: self.im.scale(c) }
    }

    pub fn sub(&self, other: &ComplexTensor3) -> ComplexTensor3 {
        ComplexTensor3 { re: &self.re - &other.re, im: &self.im - &other.im }
    }
}

/// Vector-valued 2-form `N(e_i, e_j)` stored densely and antisymmetrically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorValuedTwoForm {
    dim: usize,
    values: Vec<Vec<Rational>>,
}

impl VectorValuedTwoForm {
    /// Builds from `f(i, j)` for `i < j`; the rest follows by antisymmetry.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Vec<Rational>) -> Self {
        let mut values = vec![vec![zero(); dim]; dim * dim];
        for i in 0..dim {
            for j in i + 1..dim {
                let v = f(i, j);
                values[j * dim + i] = v.iter().map(|x| -x).collect();
                values[i * dim + j] = v;
            }
        }
        VectorValuedTwoForm { dim, values }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &[Rational] {
        &self.values[i * self.dim + j]
    }

    pub fn eval(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
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
                let c = &x[i] * &y[j];
                for (o, v) in out.iter_mut().zip(self.get(i, j)) {
                    if !v.is_zero() {
                        *o += &c * v;
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.iter().all(Zero::is_zero))
    }

    /// `(X, Y, Z) ↦ B(X, N(Y, Z))` for a bilinear matrix `B`.
    pub fn lower(&self, b: &Matrix) -> Tensor3 {
        let n = self.dim;
        let lowered: Vec<Vec<Rational>> = self.values.iter().map(|v| b.apply(v)).collect();
        Tensor3::from_fn(n, |x, y, z| lowered[y * n + z][x].clone())
    }

    /// Applies an endomorphism to the values: `(A N)(X, Y) = A(N(X, Y))`.
    pub fn compose(&self, a: &Matrix) -> VectorValuedTwoForm {
        VectorValuedTwoForm { dim: self.dim, values: self.values.iter().map(|v| a.apply(v)).collect() }
    }

    /// `(X, Y) ↦ N(A X, B Y)`.
    pub fn pullback(&self, a: &Matrix, b: &Matrix) -> VectorValuedTwoForm {
        let n = self.dim;
        let mut values = vec![vec![zero(); n]; n * n];
        for i in 0..n {
            for j in 0..n {
                values[i * n + j] = self.eval(&a.column(i), &b.column(j));
            }
        }
        VectorValuedTwoForm { dim: n, values }
    }

    pub fn add(&self, other: &VectorValuedTwoForm) -> VectorValuedTwoForm {
        VectorValuedTwoForm {
            dim: self.dim,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> VectorValuedTwoForm {
        VectorValuedTwoForm {
            dim: self.dim,
            values: self.values.iter().map(|v| v.iter().map(|x| x * c).collect()).collect(),
        }
    }

    /// First pair `i < j` with a nonzero value.
    pub fn witness(&self) -> Option<(usize, usize)> {
        let n = self.dim;
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| {
            self.get(i, j).iter().any(|x| !x.is_zero())
        })
    }
}

/// Covariant 3-tensor antisymmetric in its last two slots, stored as the
/// family of 2-forms `ψ(e_a, ·, ·)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiTensor {
    slices: Vec<Form>,
}

impl PsiTensor {
    /// Builds from a dense tensor; fails with a witness if the last two slots
    /// are not antisymmetric.
    pub fn from_tensor(t: &Tensor3) -> Result<Self, [usize; 3]> {
        let n = t.dim();
        let mut slices = Vec::with_capacity(n);
        for a in 0..n {
            let mut f = Form::zero(n, 2);
            for b in 0..n {
                for c in 0..n {
                    if *t.get(a, b, c) != -t.get(a, c, b).clone() {
                        return Err([a, b, c]);
                    }
                    if b < c {
                        f.add_term(&[b, c], t.get(a, b, c).clone());
                    }
                }
            }
            slices.push(f);
        }
        Ok(PsiTensor { slices })
    }

    pub fn slice(&self, a: usize) -> &Form {
        &self.slices[a]
    }

    pub fn dim(&self) -> usize {
        self.slices.len()
    }

    pub fn to_tensor(&self) -> Tensor3 {
        let n = self.dim();
        Tensor3::from_fn(n, |a, b, c| self.slices[a].coefficient(&[b, c]))
    }

    pub fn is_zero(&self) -> bool {
        self.slices.iter().all(Form::is_zero)
    }

    /// `Σ_a e^a ⊗ ψ(e_a, ·, ·)` as text.
    pub fn to_expression(&self) -> String {
        let n = self.dim();
        let parts: Vec<String> = self
            .slices
            .iter()
            .enumerate()
            .filter(|(_, f)| !f.is_zero())
            .map(|(a, f)| format!("{}⊗({})", super::alternating::index_label(n, &[a]), f))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// 3-vector from a fully antisymmetric contravariant table.
pub fn multivector3_from_fn(dim: usize, mut f: impl FnMut(usize, usize, usize) -> Rational) -> Multivector {
    let mut out = Multivector::zero(dim, 3);
    for a in 0..dim {
        for b in a + 1..dim {
            for c in b + 1..dim {
                out.add_term(&[a, b, c], f(a, b, c));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, unit};

    #[test]
    fn form_round_trip_through_dense() {
        let f = &Form::basis(4, &[0, 1, 3]) + &Form::basis(4, &[1, 2, 3]).scale(&int(3));
        let t = Tensor3::from_form(&f);
        assert_eq!(t.to_form().unwrap(), f);
        assert_eq!(t.cyclic_sum(), t.scale(&int(3)));
    }

    #[test]
    fn non_skew_tensor_reports_witness() {
        let t = Tensor3::from_fn(2, |a, b, c| if (a, b, c) == (0, 0, 1) { int(1) } else { int(0) });
        assert!(t.to_form().is_err());
    }

    #[test]
    fn pullback_matches_direct_evaluation() {
        let f = Form::basis(3, &[0, 1, 2]);
        let t = Tensor3::from_form(&f);
        let a = Matrix::from_i64(3, 3, &[1, 2, 0, 0, 1, 0, 3, 0, 1]);
        let p = t.pullback(&a, &a, &a);
        for x in 0..3 {
            for y in 0..3 {
                for z in 0..3 {
                    let direct = t.eval(&a.column(x), &a.column(y), &a.column(z));
                    assert_eq!(p.get(x, y, z), &direct);
                }
            }
        }
        assert_eq!(p.to_form().unwrap(), f.pullback(&a));
        assert_eq!(
            t.eval(&unit(3, 0), &unit(3, 1), &unit(3, 2)),
            f.evaluate(&[unit(3, 0), unit(3, 1), unit(3, 2)])
        );
    }
}
