//! Exact-rational multilinear algebra: scalars, matrices, forms, multivectors.

pub mod alternating;
pub mod matrix;
pub mod rational;
pub mod tensor;

pub use alternating::{index_label, Alternating, Form, Multivector, TensorError};
pub use matrix::{Matrix, MatrixError};
pub use rational::{half, int, one, rat, unit, zero, Rational};
pub use tensor::{ComplexTensor3, PsiTensor, Tensor3, VectorValuedTwoForm};

/// All strictly increasing `k`-tuples from `0..n`, lexicographic.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

#[cfg(test)]
mod tests {
    #[test]
    fn combination_counts() {
        assert_eq!(super::combinations(6, 3).len(), 20);
        assert_eq!(super::combinations(4, 0), vec![Vec::<usize>::new()]);
        assert!(super::combinations(2, 3).is_empty());
    }
}
