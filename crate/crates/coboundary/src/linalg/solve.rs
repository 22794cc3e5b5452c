//! Exact linear solving over the scalar field.

use crate::scalar::Scalar;

use super::tensor::{ShapeError, Tensor};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolution {
    /// One particular solution (free variables set to zero) plus a basis of
    /// the nullspace, one vector per free column.
    Solved { particular: Tensor, nullspace: Vec<Tensor> },
    Inconsistent,
}

/// Gauss-Jordan elimination of A x = b over the scalar field. The pivot is
/// always the first nonzero entry in column order, so results are
/// deterministic; every division is exact.
pub fn solve_linear(a: &Tensor, b: &Tensor) -> Result<LinearSolution, ShapeError> {
    if a.rank() != 2 {
        return Err(ShapeError::Rank { op: "solve_linear", expected: 2, shape: a.shape().to_vec() });
    }
    if b.rank() != 1 || b.shape()[0] != a.shape()[0] {
        return Err(ShapeError::Mismatch {
            op: "solve_linear",
            lhs: a.shape().to_vec(),
            rhs: b.shape().to_vec(),
        });
    }
    let rows = a.shape()[0];
    let cols = a.shape()[1];
    let mut aug: Vec<Vec<Scalar>> = (0..rows)
        .map(|i| {
            let mut row: Vec<Scalar> = (0..cols).map(|j| a.at(i, j).clone()).collect();
            row.push(b.entries()[i].clone());
            row
        })
        .collect();

    let mut pivots: Vec<(usize, usize)> = vec![];
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !aug[r][c].is_zero()) else {
            continue;
        };
        aug.swap(rank, p);
        let inv = aug[rank][c].inv().unwrap();
        for x in &mut aug[rank] {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for r in 0..rows {
            if r != rank && !aug[r][c].is_zero() {
                let f = std::mem::replace(&mut aug[r][c], Scalar::zero());
                for cc in c + 1..=cols {
                    if !aug[rank][cc].is_zero() {
                        let t = &aug[rank][cc] * &f;
                        aug[r][cc] = &aug[r][cc] - &t;
                    }
                }
            }
        }
        pivots.push((rank, c));
        rank += 1;
    }

    if aug.iter().skip(rank).any(|row| !row[cols].is_zero()) {
        return Ok(LinearSolution::Inconsistent);
    }

    let mut particular = vec![Scalar::zero(); cols];
    for &(r, c) in &pivots {
        particular[c] = aug[r][cols].clone();
    }

    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut nullspace = vec![];
    for free in (0..cols).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![Scalar::zero(); cols];
        v[free] = Scalar::one();
        for &(r, c) in &pivots {
            v[c] = -&aug[r][free];
        }
        nullspace.push(Tensor::vector(v));
    }

    Ok(LinearSolution::Solved { particular: Tensor::vector(particular), nullspace })
}
