//! Matrix Lie algebra gl(n), constant bivectors/trivectors over its
//! elementary-matrix basis, and the group-level checks built on them:
//! point bivectors pi(g) = rg - gr, gauge variants rho(g) = pi(g) + g*A,
//! translation by a fixed group element, and the induced Poisson bracket
//! on matrix coordinates.
//!
//! Basis order: e(i,j) (the matrix unit with a 1 in row i, column j,
//! 0-based) sits at flat index i*n + j.

mod bivector;
mod bracket;
mod checks;
mod point;

pub use bivector::{is_ad_invariant, schouten_square, standard_r, Bivector, Trivector};
pub use bracket::{jacobi_check, leibniz_check, poisson_bracket, symbolic_pi};
pub use checks::{
    check_antipode, check_antipode_symbolic, check_gauge_identity, check_multiplicativity,
    check_multiplicativity_symbolic, check_translation, epsilon_antidiagonal, seeded_pairs,
    seeded_points, seeded_triples, GaugeReport, TranslationReport,
};
pub use point::{pi_minus, pi_plus, PointBivector};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClassicalError {
    #[error("matrix size {n} is too small for this construction (need n >= {min})")]
    TooSmall { n: usize, min: usize },
    #[error("{what} must be invertible")]
    Singular { what: &'static str },
    #[error("component array has length {got}, expected {want}")]
    BadLength { got: usize, want: usize },
    #[error("component ({a},{b}) breaks antisymmetry: {lhs} vs -({rhs})")]
    NotAntisymmetric { a: usize, b: usize, lhs: String, rhs: String },
    #[error("components ({a},{b},{c}) break total antisymmetry")]
    NotTotallyAntisymmetric { a: usize, b: usize, c: usize },
}

/// The elementary-matrix basis e(i,j) of gl(n) with its commutator table.
///
/// Construction cross-checks the closed-form structure constants
/// [e(i,j), e(k,l)] = d_jk e(i,l) - d_li e(k,j) against literal matrix
/// commutators, so everything downstream may trust `commutator`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LieBasis {
    n: usize,
}

impl LieBasis {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "basis needs n >= 1");
        let basis = LieBasis { n };
        for a in 0..basis.dim() {
            for b in 0..basis.dim() {
                assert_eq!(
                    basis.commutator_matrix(a, b),
                    basis.expand_commutator(a, b),
                    "structure constants disagree with matrix commutator at ({a},{b})"
                );
            }
        }
        basis
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension n^2 of gl(n).
    pub fn dim(&self) -> usize {
        self.n * self.n
    }

    /// Flat index of e(i,j), 0-based.
    pub fn idx(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < self.n && j < self.n);
        i * self.n + j
    }

    /// Inverse of `idx`.
    pub fn pair(&self, a: usize) -> (usize, usize) {
        debug_assert!(a < self.dim());
        (a / self.n, a % self.n)
    }

    /// [e_a, e_b] expanded in the basis; at most two terms, merged so the
    /// result never carries a zero coefficient.
    pub fn commutator(&self, a: usize, b: usize) -> Vec<(usize, i64)> {
        let (i, j) = self.pair(a);
        let (k, l) = self.pair(b);
        let mut terms: Vec<(usize, i64)> = Vec::with_capacity(2);
        if j == k {
            terms.push((self.idx(i, l), 1));
        }
        if l == i {
            let id = self.idx(k, j);
            match terms.iter_mut().find(|(t, _)| *t == id) {
                Some((_, c)) => *c -= 1,
                None => terms.push((id, -1)),
            }
        }
        terms.retain(|(_, c)| *c != 0);
        terms
    }

    fn unit_matrix(&self, a: usize) -> Vec<Vec<i64>> {
        let (i, j) = self.pair(a);
        let mut m = vec![vec![0; self.n]; self.n];
        m[i][j] = 1;
        m
    }

    fn commutator_matrix(&self, a: usize, b: usize) -> Vec<Vec<i64>> {
        let (x, y) = (self.unit_matrix(a), self.unit_matrix(b));
        let mut out = vec![vec![0; self.n]; self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                for k in 0..self.n {
                    out[i][j] += x[i][k] * y[k][j] - y[i][k] * x[k][j];
                }
            }
        }
        out
    }

    fn expand_commutator(&self, a: usize, b: usize) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.n]; self.n];
        for (t, c) in self.commutator(a, b) {
            let (i, j) = self.pair(t);
            out[i][j] += c;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structure_constants_match_matrix_commutators() {
        for n in 1..=4 {
            LieBasis::new(n);
        }
    }

    #[test]
    fn commutator_of_ladder_pair_is_diagonal_difference() {
        let b = LieBasis::new(2);
        let x = b.idx(0, 1);
        let y = b.idx(1, 0);
        assert_eq!(b.commutator(x, y), vec![(b.idx(0, 0), 1), (b.idx(1, 1), -1)]);
        assert_eq!(b.commutator(x, x), vec![]);
    }
}
