//! Dense tensors over Scalar in row-major multi-index order.

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

#[derive(Debug, thiserror::Error)]
pub enum ShapeError {
    #[error("{op}: incompatible shapes {lhs:?} and {rhs:?}")]
    Mismatch { op: &'static str, lhs: Vec<usize>, rhs: Vec<usize> },
    #[error("{op}: expected rank {expected}, got shape {shape:?}")]
    Rank { op: &'static str, expected: usize, shape: Vec<usize> },
}

/// Flat row-major offset of a multi-index.
pub(crate) fn flat_index(shape: &[usize], idx: &[usize]) -> usize {
    debug_assert_eq!(shape.len(), idx.len());
    let mut off = 0;
    for (d, i) in shape.iter().zip(idx) {
        debug_assert!(i < d);
        off = off * d + i;
    }
    off
}

/// Row-major iteration over all multi-indices of a shape.
pub(crate) fn indices(shape: &[usize]) -> MultiIndexIter {
    MultiIndexIter { shape: shape.to_vec(), next: Some(vec![0; shape.len()]) }
}

pub(crate) struct MultiIndexIter {
    shape: Vec<usize>,
    next: Option<Vec<usize>>,
}

impl Iterator for MultiIndexIter {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.shape.iter().any(|&d| d == 0) {
            return None;
        }
        let current = self.next.take()?;
        let mut succ = current.clone();
        for p in (0..succ.len()).rev() {
            succ[p] += 1;
            if succ[p] < self.shape[p] {
                self.next = Some(succ);
                break;
            }
            succ[p] = 0;
        }
        Some(current)
    }
}

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawTensor")]
pub struct Tensor {
    shape: Vec<usize>,
    entries: Vec<Scalar>,
}

#[derive(Deserialize)]
struct RawTensor {
    shape: Vec<usize>,
    entries: Vec<Scalar>,
}

impl TryFrom<RawTensor> for Tensor {
    type Error = String;

    fn try_from(raw: RawTensor) -> Result<Self, String> {
        let expect: usize = raw.shape.iter().product();
        if raw.entries.len() != expect {
            return Err(format!(
                "tensor with shape {:?} needs {expect} entries, got {}",
                raw.shape,
                raw.entries.len()
            ));
        }
        Ok(Tensor { shape: raw.shape, entries: raw.entries })
    }
}

impl std::fmt::Debug for Tensor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Tensor{:?}[", self.shape)?;
        for (k, e) in self.entries.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("]")
    }
}

impl Tensor {
    pub fn new(shape: Vec<usize>, entries: Vec<Scalar>) -> Self {
        let expect: usize = shape.iter().product();
        assert_eq!(entries.len(), expect, "entry count must match shape {shape:?}");
        Tensor { shape, entries }
    }

    pub fn zeros(shape: Vec<usize>) -> Self {
        let n = shape.iter().product();
        Tensor { shape, entries: vec![Scalar::zero(); n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut t = Self::zeros(vec![n, n]);
        for i in 0..n {
            *t.entry_mut(&[i, i]) = Scalar::one();
        }
        t
    }

    pub fn matrix(rows: usize, cols: usize, entries: Vec<Scalar>) -> Self {
        Self::new(vec![rows, cols], entries)
    }

    pub fn vector(entries: Vec<Scalar>) -> Self {
        Tensor { shape: vec![entries.len()], entries }
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn rank(&self) -> usize {
        self.shape.len()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn entry(&self, idx: &[usize]) -> &Scalar {
        &self.entries[flat_index(&self.shape, idx)]
    }

    pub fn entry_mut(&mut self, idx: &[usize]) -> &mut Scalar {
        &mut self.entries[flat_index(&self.shape, idx)]
    }

    /// Rank-2 convenience accessor.
    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        self.entry(&[i, j])
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    /// Multi-index of the first nonzero entry, if any; a witness for failed
    /// identity checks.
    pub fn first_nonzero(&self) -> Option<Vec<usize>> {
        let flat = self.entries.iter().position(|e| !e.is_zero())?;
        let mut idx = vec![0; self.shape.len()];
        let mut rest = flat;
        for p in (0..self.shape.len()).rev() {
            idx[p] = rest % self.shape[p];
            rest /= self.shape[p];
        }
        Some(idx)
    }

    pub fn reshape(&self, shape: Vec<usize>) -> Self {
        let expect: usize = shape.iter().product();
        assert_eq!(self.entries.len(), expect, "reshape to {shape:?} changes entry count");
        Tensor { shape, entries: self.entries.clone() }
    }

    // ---- entrywise algebra (shape mismatches are programming errors) ----

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.shape, other.shape, "tensor add on unequal shapes");
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Tensor { shape: self.shape.clone(), entries }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.shape, other.shape, "tensor sub on unequal shapes");
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        Tensor { shape: self.shape.clone(), entries }
    }

    pub fn neg(&self) -> Self {
        Tensor {
            shape: self.shape.clone(),
            entries: self.entries.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Tensor {
            shape: self.shape.clone(),
            entries: self.entries.iter().map(|a| a * s).collect(),
        }
    }

    pub fn conj(&self) -> Self {
        Tensor {
            shape: self.shape.clone(),
            entries: self.entries.iter().map(Scalar::conjugate).collect(),
        }
    }

    // ---- matrix operations ----

    /// Matrix (or matrix-vector / vector-matrix) product.
    pub fn matmul(&self, other: &Self) -> Result<Self, ShapeError> {
        let mismatch = || ShapeError::Mismatch {
            op: "matmul",
            lhs: self.shape.clone(),
            rhs: other.shape.clone(),
        };
        match (self.rank(), other.rank()) {
            (2, 2) => {
                let (m, k) = (self.shape[0], self.shape[1]);
                let (k2, n) = (other.shape[0], other.shape[1]);
                if k != k2 {
                    return Err(mismatch());
                }
                let mut out = Self::zeros(vec![m, n]);
                for i in 0..m {
                    for l in 0..k {
                        let a = self.at(i, l);
                        if a.is_zero() {
                            continue;
                        }
                        for j in 0..n {
                            let b = other.at(l, j);
                            if !b.is_zero() {
                                let cur = out.entry(&[i, j]) + a * b;
                                *out.entry_mut(&[i, j]) = cur;
                            }
                        }
                    }
                }
                Ok(out)
            }
            (2, 1) => {
                let (m, k) = (self.shape[0], self.shape[1]);
                if k != other.shape[0] {
                    return Err(mismatch());
                }
                let mut out = vec![Scalar::zero(); m];
                for i in 0..m {
                    for l in 0..k {
                        let a = self.at(i, l);
                        if !a.is_zero() && !other.entries[l].is_zero() {
                            out[i] = &out[i] + &(a * &other.entries[l]);
                        }
                    }
                }
                Ok(Self::vector(out))
            }
            (1, 2) => {
                let k = self.shape[0];
                let (k2, n) = (other.shape[0], other.shape[1]);
                if k != k2 {
                    return Err(mismatch());
                }
                let mut out = vec![Scalar::zero(); n];
                for l in 0..k {
                    if self.entries[l].is_zero() {
                        continue;
                    }
                    for j in 0..n {
                        let b = other.at(l, j);
                        if !b.is_zero() {
                            out[j] = &out[j] + &(&self.entries[l] * b);
                        }
                    }
                }
                Ok(Self::vector(out))
            }
            _ => Err(mismatch()),
        }
    }

    /// Kronecker product of equal-rank tensors: dimensions multiply
    /// per-axis, entries multiply at composite indices.
    pub fn kron(&self, other: &Self) -> Result<Self, ShapeError> {
        if self.rank() != other.rank() {
            return Err(ShapeError::Mismatch {
                op: "kron",
                lhs: self.shape.clone(),
                rhs: other.shape.clone(),
            });
        }
        let shape: Vec<usize> =
            self.shape.iter().zip(&other.shape).map(|(a, b)| a * b).collect();
        let mut out = Self::zeros(shape.clone());
        for ia in indices(&self.shape) {
            let a = self.entry(&ia);
            if a.is_zero() {
                continue;
            }
            for ib in indices(&other.shape) {
                let b = other.entry(&ib);
                if b.is_zero() {
                    continue;
                }
                let idx: Vec<usize> = ia
                    .iter()
                    .zip(&ib)
                    .zip(&other.shape)
                    .map(|((x, y), d)| x * d + y)
                    .collect();
                *out.entry_mut(&idx) = a * b;
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Result<Self, ShapeError> {
        if self.rank() != 2 {
            return Err(ShapeError::Rank { op: "transpose", expected: 2, shape: self.shape.clone() });
        }
        let (m, n) = (self.shape[0], self.shape[1]);
        let mut out = Self::zeros(vec![n, m]);
        for i in 0..m {
            for j in 0..n {
                *out.entry_mut(&[j, i]) = self.at(i, j).clone();
            }
        }
        Ok(out)
    }

    pub fn conj_transpose(&self) -> Result<Self, ShapeError> {
        if self.rank() != 2 {
            return Err(ShapeError::Rank {
                op: "conj_transpose",
                expected: 2,
                shape: self.shape.clone(),
            });
        }
        Ok(self.transpose().unwrap().conj())
    }

    /// Exact inverse of a square rank-2 tensor; None when singular.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rank(), 2, "inverse needs a rank-2 tensor");
        let n = self.shape[0];
        assert_eq!(self.shape[1], n, "inverse needs a square tensor");
        let mut work = self.clone();
        let mut out = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !work.at(r, col).is_zero())?;
            if pivot != col {
                for j in 0..n {
                    let (a, b) = (work.at(pivot, j).clone(), work.at(col, j).clone());
                    *work.entry_mut(&[pivot, j]) = b;
                    *work.entry_mut(&[col, j]) = a;
                    let (a, b) = (out.at(pivot, j).clone(), out.at(col, j).clone());
                    *out.entry_mut(&[pivot, j]) = b;
                    *out.entry_mut(&[col, j]) = a;
                }
            }
            let inv = work.at(col, col).inv().expect("pivot is nonzero");
            for j in 0..n {
                *work.entry_mut(&[col, j]) = work.at(col, j) * &inv;
                *out.entry_mut(&[col, j]) = out.at(col, j) * &inv;
            }
            for r in 0..n {
                if r == col || work.at(r, col).is_zero() {
                    continue;
                }
                let f = work.at(r, col).clone();
                for j in 0..n {
                    *work.entry_mut(&[r, j]) = work.at(r, j) - &(&f * work.at(col, j));
                    *out.entry_mut(&[r, j]) = out.at(r, j) - &(&f * out.at(col, j));
                }
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(k: i64) -> Scalar {
        Scalar::from_integer(k)
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let i2 = Tensor::identity(2);
        assert_eq!(i2.kron(&i2).unwrap(), Tensor::identity(4));
    }

    #[test]
    fn swap_squares_to_identity() {
        // flip on C^2 ⊗ C^2
        let mut p = Tensor::zeros(vec![4, 4]);
        for a in 0..2 {
            for b in 0..2 {
                *p.entry_mut(&[2 * a + b, 2 * b + a]) = Scalar::one();
            }
        }
        assert_eq!(p.matmul(&p).unwrap(), Tensor::identity(4));
    }

    #[test]
    fn conj_transpose_is_an_involution() {
        let i = Scalar::from_cyclo(crate::scalar::CycloRational::root_of_unity(4, 1));
        let a = Tensor::matrix(2, 2, vec![Scalar::q(), i, s(-3), Scalar::q_pow(-2)]);
        assert_eq!(a.conj_transpose().unwrap().conj_transpose().unwrap(), a);
    }

    #[test]
    fn inverse_round_trips_and_flags_singularity() {
        let a = Tensor::matrix(2, 2, vec![Scalar::q(), s(1), s(0), Scalar::q_pow(-1)]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.matmul(&inv).unwrap(), Tensor::identity(2));
        assert_eq!(inv.matmul(&a).unwrap(), Tensor::identity(2));
        let sing = Tensor::matrix(2, 2, vec![s(1), s(2), s(2), s(4)]);
        assert!(sing.inverse().is_none());
    }

    #[test]
    fn matmul_rejects_bad_shapes() {
        let a = Tensor::zeros(vec![2, 3]);
        let b = Tensor::zeros(vec![2, 3]);
        let err = a.matmul(&b).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("[2, 3]"), "error should carry both shapes: {msg}");
    }

    #[test]
    fn serde_round_trip() {
        let t = Tensor::matrix(1, 2, vec![Scalar::q(), s(2)]);
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(json, r#"{"shape":[1,2],"entries":["q","2"]}"#);
        let back: Tensor = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
        let bad = r#"{"shape":[2,2],"entries":["q"]}"#;
        assert!(serde_json::from_str::<Tensor>(bad).is_err());
    }
}
