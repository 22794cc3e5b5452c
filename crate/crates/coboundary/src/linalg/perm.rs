//! Permutation operators on tensor-power spaces.

use crate::scalar::Scalar;

use super::tensor::{flat_index, indices, Tensor};

/// A permutation of the factors of (C^dim)^{⊗ n_factors}. `perm[p]` is the
/// destination position of factor p; expansion is a 0/1 orthogonal matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationOp {
    dim: usize,
    perm: Vec<usize>,
}

impl PermutationOp {
    pub fn new(dim: usize, perm: Vec<usize>) -> Self {
        assert!(dim >= 1, "factor dimension must be positive");
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            assert!(p < perm.len() && !seen[p], "not a permutation: {perm:?}");
            seen[p] = true;
        }
        PermutationOp { dim, perm }
    }

    pub fn n_factors(&self) -> usize {
        self.perm.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The flip on C^dim ⊗ C^dim.
    pub fn swap(dim: usize) -> Self {
        Self::new(dim, vec![1, 0])
    }

    /// Dense matrix: basis column (i_1..i_k) maps to the row j defined by
    /// j[perm[p]] = i[p].
    pub fn expand(&self) -> Tensor {
        let k = self.n_factors();
        let n: usize = self.dim.pow(k as u32);
        let shape = vec![self.dim; k];
        let mut out = Tensor::zeros(vec![n, n]);
        for idx in indices(&shape) {
            let mut dest = vec![0; k];
            for (p, &i) in idx.iter().enumerate() {
                dest[self.perm[p]] = i;
            }
            let col = flat_index(&shape, &idx);
            let row = flat_index(&shape, &dest);
            *out.entry_mut(&[row, col]) = Scalar::one();
        }
        out
    }
}

/// The factor order reversal (1,2,…,k) -> (k,…,2,1) on (C^d)^{⊗k}.
pub fn factor_reversal_operator(n_factors: usize, d: usize) -> PermutationOp {
    assert!(n_factors >= 1);
    PermutationOp::new(d, (0..n_factors).map(|p| n_factors - 1 - p).collect())
}

/// The n×n antidiagonal matrix e_j -> e_{n+1-j}; its own inverse.
pub fn total_permutation_matrix(n: usize) -> Tensor {
    assert!(n >= 1);
    let mut out = Tensor::zeros(vec![n, n]);
    for j in 0..n {
        *out.entry_mut(&[n - 1 - j, j]) = Scalar::one();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_factor_reversal_is_the_flip() {
        let p = factor_reversal_operator(2, 2).expand();
        for (a, b) in [(0usize, 0usize), (0, 1), (1, 0), (1, 1)] {
            // column index (a,b) -> row index (b,a)
            assert!(p.at(2 * b + a, 2 * a + b).is_one());
        }
        assert_eq!(p.matmul(&p).unwrap(), Tensor::identity(4));
    }

    #[test]
    fn single_factor_reversal_is_identity() {
        assert_eq!(factor_reversal_operator(1, 3).expand(), Tensor::identity(3));
    }

    #[test]
    fn three_factor_reversal_is_involutive() {
        let p = factor_reversal_operator(3, 2).expand();
        assert_eq!(p.matmul(&p).unwrap(), Tensor::identity(8));
    }

    #[test]
    fn expansions_are_orthogonal() {
        let p = PermutationOp::new(2, vec![2, 0, 1]).expand();
        let pt = p.transpose().unwrap();
        assert_eq!(pt.matmul(&p).unwrap(), Tensor::identity(8));
    }

    #[test]
    fn antidiagonal_matrix_matches_its_definition() {
        assert_eq!(total_permutation_matrix(1), Tensor::identity(1));
        let p2 = total_permutation_matrix(2);
        assert!(p2.at(0, 1).is_one() && p2.at(1, 0).is_one());
        assert!(p2.at(0, 0).is_zero() && p2.at(1, 1).is_zero());
        let p3 = total_permutation_matrix(3);
        assert_eq!(p3.matmul(&p3).unwrap(), Tensor::identity(3));
    }
}
