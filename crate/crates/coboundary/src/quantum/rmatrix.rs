//! The standard R-matrix on C^n ⊗ C^n and its derived operators.
//!
//! R = q·Σ e_ii⊗e_ii + Σ_{i≠j} e_ii⊗e_jj + (q − q⁻¹)·Σ_{i<j} e_ij⊗e_ji,
//! stored as an n²×n² matrix over row pairs (i,k) and column pairs (j,l).
//! Construction checks invertibility and the braid equation
//! R12·R13·R23 = R23·R13·R12; both hold identically for this family.

use crate::classical::epsilon_antidiagonal;
use crate::linalg::{factor_reversal_operator, Tensor};
use crate::quantum::QuantumError;
use crate::report::CheckOutcome;
use crate::scalar::Scalar;

/// Validated R-matrix: invertible and a solution of the braid equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RMatrixData {
    n: usize,
    r: Tensor,
}

impl RMatrixData {
    /// The standard q-deformation matrix for C^n, n ≥ 2.
    pub fn standard(n: usize) -> Result<Self, QuantumError> {
        if n < 2 {
            return Err(QuantumError::TooSmall { what: "standard R-matrix", n, min: 2 });
        }
        let lambda = &Scalar::q() - &Scalar::q_pow(-1);
        let mut r = Tensor::zeros(vec![n * n, n * n]);
        for i in 0..n {
            for j in 0..n {
                let c = if i == j { Scalar::q() } else { Scalar::one() };
                // e_ii ⊗ e_jj: row (i,j), column (i,j)
                *r.entry_mut(&[i * n + j, i * n + j]) = c;
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                // e_ij ⊗ e_ji: row (i,j), column (j,i)
                *r.entry_mut(&[i * n + j, j * n + i]) = lambda.clone();
            }
        }
        let data = RMatrixData { n, r };
        assert!(data.r.inverse().is_some(), "standard R-matrix is invertible");
        assert!(data.qybe_holds(), "standard R-matrix solves the braid equation");
        Ok(data)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The n²×n² matrix itself.
    pub fn matrix(&self) -> &Tensor {
        &self.r
    }

    /// Factor swap P on C^n ⊗ C^n.
    pub fn swap(&self) -> Tensor {
        factor_reversal_operator(2, self.n).expand()
    }

    /// P·R·P: the same solution written with the factors interchanged.
    pub fn r_tilde(&self) -> Tensor {
        let p = self.swap();
        p.matmul(&self.r).unwrap().matmul(&p).unwrap()
    }

    /// R·P: the operator that intertwines tensor squares of the plain family.
    pub fn braid(&self) -> Tensor {
        self.r.matmul(&self.swap()).unwrap()
    }

    /// P·R: the braid of P·R·P, intertwining the twisted side.
    pub fn braid_tilde(&self) -> Tensor {
        self.swap().matmul(&self.r).unwrap()
    }

    fn qybe_holds(&self) -> bool {
        let r12 = embed_pair(&self.r, self.n, 3, (0, 1));
        let r13 = embed_pair(&self.r, self.n, 3, (0, 2));
        let r23 = embed_pair(&self.r, self.n, 3, (1, 2));
        let lhs = r12.matmul(&r13).unwrap().matmul(&r23).unwrap();
        let rhs = r23.matmul(&r13).unwrap().matmul(&r12).unwrap();
        lhs == rhs
    }
}

/// Embeds an n²×n² two-leg operator into legs (a,b) of (C^n)^⊗total.
pub(crate) fn embed_pair(r: &Tensor, n: usize, total: usize, legs: (usize, usize)) -> Tensor {
    let (a, b) = legs;
    assert!(a < b && b < total, "legs must be ordered and in range");
    let dim = n.pow(total as u32);
    let mut out = Tensor::zeros(vec![dim, dim]);
    let spectators: Vec<usize> = (0..total).filter(|&p| p != a && p != b).collect();
    let spect_shape = vec![n; spectators.len()];
    let mut row_idx = vec![0usize; total];
    let mut col_idx = vec![0usize; total];
    for ia in 0..n {
        for ib in 0..n {
            for ja in 0..n {
                for jb in 0..n {
                    let v = r.at(ia * n + ib, ja * n + jb);
                    if v.is_zero() {
                        continue;
                    }
                    for spect in crate::linalg::multi_indices(&spect_shape) {
                        row_idx[a] = ia;
                        row_idx[b] = ib;
                        col_idx[a] = ja;
                        col_idx[b] = jb;
                        for (&p, &s) in spectators.iter().zip(&spect) {
                            row_idx[p] = s;
                            col_idx[p] = s;
                        }
                        let row = row_idx.iter().fold(0, |acc, &i| acc * n + i);
                        let col = col_idx.iter().fold(0, |acc, &i| acc * n + i);
                        *out.entry_mut(&[row, col]) = v.clone();
                    }
                }
            }
        }
    }
    out
}

/// Braid equation for the standard matrix on three legs.
pub fn check_qybe(n: usize) -> Result<CheckOutcome, QuantumError> {
    let data = RMatrixData::standard(n)?;
    let r12 = embed_pair(data.matrix(), n, 3, (0, 1));
    let r13 = embed_pair(data.matrix(), n, 3, (0, 2));
    let r23 = embed_pair(data.matrix(), n, 3, (1, 2));
    let lhs = r12.matmul(&r13).unwrap().matmul(&r23).unwrap();
    let rhs = r23.matmul(&r13).unwrap().matmul(&r12).unwrap();
    let diff = lhs.sub(&rhs);
    if diff.is_zero() {
        Ok(CheckOutcome::pass(format!(
            "R12 R13 R23 = R23 R13 R12 on all {} basis columns",
            n * n * n
        )))
    } else {
        let at = diff.first_nonzero().expect("nonzero difference");
        Ok(CheckOutcome::fail(
            "braid equation violated",
            format!("first differing matrix entry at {at:?}"),
        ))
    }
}

/// Conjugation by g₀ ⊗ g₀ carries R onto P·R·P for the canonical scaled
/// antidiagonal g₀.
pub fn check_eq22(n: usize) -> Result<CheckOutcome, QuantumError> {
    check_eq22_with(n, &epsilon_antidiagonal(n))
}

/// Same statement for an arbitrary invertible g₀; fails with a witness when
/// the conjugation misses.
pub fn check_eq22_with(n: usize, g0: &Tensor) -> Result<CheckOutcome, QuantumError> {
    let data = RMatrixData::standard(n)?;
    let g0_inv = g0.inverse().expect("conjugating matrix must be invertible");
    let gg = g0.kron(g0).unwrap();
    let gg_inv = g0_inv.kron(&g0_inv).unwrap();
    let conj = gg.matmul(data.matrix()).unwrap().matmul(&gg_inv).unwrap();
    let diff = conj.sub(&data.r_tilde());
    if diff.is_zero() {
        Ok(CheckOutcome::pass(format!(
            "(g0 ⊗ g0) R (g0 ⊗ g0)^-1 equals the factor-swapped matrix for n = {n}"
        )))
    } else {
        let at = diff.first_nonzero().expect("nonzero difference");
        Ok(CheckOutcome::fail(
            "conjugation does not reach the factor-swapped matrix",
            format!(
                "entry (({},{}),({},{})) differs by {}",
                at[0] / n,
                at[0] % n,
                at[1] / n,
                at[1] % n,
                diff.entry(&at)
            ),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::total_permutation_matrix;

    #[test]
    fn n2_matrix_has_the_expected_entries() {
        let r = RMatrixData::standard(2).unwrap();
        let m = r.matrix();
        let lambda = &Scalar::q() - &Scalar::q_pow(-1);
        assert_eq!(*m.at(0, 0), Scalar::q());
        assert_eq!(*m.at(1, 1), Scalar::one());
        assert_eq!(*m.at(2, 2), Scalar::one());
        assert_eq!(*m.at(3, 3), Scalar::q());
        assert_eq!(*m.at(1, 2), lambda);
        let nonzero: usize = (0..4)
            .flat_map(|i| (0..4).map(move |j| (i, j)))
            .filter(|&(i, j)| !m.at(i, j).is_zero())
            .count();
        assert_eq!(nonzero, 5);
    }

    #[test]
    fn too_small_n_is_rejected() {
        assert!(matches!(
            RMatrixData::standard(1),
            Err(QuantumError::TooSmall { .. })
        ));
    }

    #[test]
    fn braid_forms_come_from_column_and_row_swaps() {
        let r = RMatrixData::standard(2).unwrap();
        let b = r.braid();
        // R·P swaps columns (1,2)<->(2,1): diag entries q,λ,0,q with the
        // off-diagonal 1s at ((1,2),(2,1)) and ((2,1),(1,2)).
        let lambda = &Scalar::q() - &Scalar::q_pow(-1);
        assert_eq!(*b.at(0, 0), Scalar::q());
        assert_eq!(*b.at(1, 1), lambda);
        assert_eq!(*b.at(1, 2), Scalar::one());
        assert_eq!(*b.at(2, 1), Scalar::one());
        assert!(b.at(2, 2).is_zero());
        assert_eq!(*b.at(3, 3), Scalar::q());
        // both braids are symmetric, and conjugating one by P gives the other
        assert_eq!(b.transpose().unwrap(), b);
        let bt = r.braid_tilde();
        assert_eq!(bt.transpose().unwrap(), bt);
        let p = r.swap();
        assert_eq!(p.matmul(&b).unwrap().matmul(&p).unwrap(), bt);
    }

    #[test]
    fn braid_satisfies_the_braid_relation_on_three_legs() {
        for n in 2..=3 {
            let r = RMatrixData::standard(n).unwrap();
            let b = r.braid();
            let b12 = embed_pair(&b, n, 3, (0, 1));
            let b23 = embed_pair(&b, n, 3, (1, 2));
            let lhs = b12.matmul(&b23).unwrap().matmul(&b12).unwrap();
            let rhs = b23.matmul(&b12).unwrap().matmul(&b23).unwrap();
            assert_eq!(lhs, rhs, "n = {n}");
        }
    }

    #[test]
    fn qybe_passes_for_small_n() {
        for n in 2..=4 {
            assert!(check_qybe(n).unwrap().passed(), "n = {n}");
        }
    }

    #[test]
    fn entries_specialize_to_the_identity_matrix_at_q_one() {
        use crate::scalar::CycloRational;
        for n in 2..=3 {
            let r = RMatrixData::standard(n).unwrap();
            for i in 0..n * n {
                for j in 0..n * n {
                    let v = r.matrix().at(i, j).eval_q1().expect("denominator nonzero at q=1");
                    let expect = if i == j { CycloRational::one() } else { CycloRational::zero() };
                    assert_eq!(v, expect, "entry ({i},{j}) at n = {n}");
                }
            }
        }
    }

    #[test]
    fn eq22_holds_for_the_canonical_antidiagonal_and_fails_for_identity() {
        for n in 2..=3 {
            assert!(check_eq22(n).unwrap().passed(), "n = {n}");
        }
        let out = check_eq22_with(2, &Tensor::identity(2)).unwrap();
        assert!(!out.passed());
        let witness = out.witness.unwrap();
        assert!(witness.contains("((0,1),(1,0))"), "witness: {witness}");
    }

    #[test]
    fn eq22_needs_the_scaling_only_up_to_cancellation() {
        // the centre scaling drops out of the conjugation, so the plain
        // antidiagonal works exactly like the epsilon-scaled one
        let out = check_eq22_with(3, &total_permutation_matrix(3)).unwrap();
        assert!(out.passed());
    }
}
