//! q-deformed volume elements: rank-n tensors supported on permutations of
//! (0..n), with value (-q)^inversions, plus the factor-reversed variant
//! whose component at a multi-index is the plain value at the reversed one.
//!
//! The column and row elements coincide entrywise (as do their reversed
//! forms); both spellings are kept because they contract different sides of
//! a matrix power.

use crate::linalg::{factor_reversal_operator, multi_indices, Tensor};
use crate::quantum::QuantumError;
use crate::report::CheckOutcome;
use crate::scalar::Scalar;

/// Number of out-of-order pairs in an index word.
fn inversions(idx: &[usize]) -> usize {
    let mut count = 0;
    for p in 0..idx.len() {
        for r in p + 1..idx.len() {
            if idx[p] > idx[r] {
                count += 1;
            }
        }
    }
    count
}

fn is_permutation(idx: &[usize]) -> bool {
    let mut seen = vec![false; idx.len()];
    idx.iter().all(|&i| !std::mem::replace(&mut seen[i], true))
}

/// (-q)^k for k >= 0.
fn neg_q_pow(k: usize) -> Scalar {
    let s = Scalar::q_pow(k as i64);
    if k % 2 == 0 {
        s
    } else {
        -s
    }
}

/// The rank-n volume tensor and its factor-reversed companion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VolumeElement {
    n: usize,
    plain: Tensor,
    reversed: Tensor,
}

impl VolumeElement {
    pub fn new(n: usize) -> Result<Self, QuantumError> {
        if n < 1 {
            return Err(QuantumError::TooSmall { what: "volume element", n, min: 1 });
        }
        let shape = vec![n; n];
        let mut plain = Tensor::zeros(shape.clone());
        let mut reversed = Tensor::zeros(shape.clone());
        for idx in multi_indices(&shape) {
            if !is_permutation(&idx) {
                continue;
            }
            *plain.entry_mut(&idx) = neg_q_pow(inversions(&idx));
            let back: Vec<usize> = idx.iter().rev().copied().collect();
            *reversed.entry_mut(&back) = neg_q_pow(inversions(&idx));
        }
        Ok(VolumeElement { n, plain, reversed })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Component at one multi-index of the plain element.
    pub fn value(&self, idx: &[usize]) -> &Scalar {
        self.plain.entry(idx)
    }

    /// Element contracted against column indices of a matrix power.
    pub fn col(&self) -> &Tensor {
        &self.plain
    }

    /// Element contracted against row indices; entrywise the same tensor.
    pub fn row(&self) -> &Tensor {
        &self.plain
    }

    /// Factor-reversed element, column side.
    pub fn col_tilde(&self) -> &Tensor {
        &self.reversed
    }

    /// Factor-reversed element, row side.
    pub fn row_tilde(&self) -> &Tensor {
        &self.reversed
    }
}

/// Structural facts about the volume element for one n: support, the value
/// at the identity, the adjacent-transposition scaling, and the reversal
/// operator carrying the plain element to the reversed one.
pub fn check_volume_element(n: usize) -> Result<CheckOutcome, QuantumError> {
    let vol = VolumeElement::new(n)?;
    let shape = vec![n; n];

    let id: Vec<usize> = (0..n).collect();
    if !vol.value(&id).is_one() {
        return Ok(CheckOutcome::fail(
            "value at the identity permutation is not 1",
            format!("got {}", vol.value(&id)),
        ));
    }

    for idx in multi_indices(&shape) {
        let on_perm = is_permutation(&idx);
        if on_perm == vol.value(&idx).is_zero() {
            return Ok(CheckOutcome::fail(
                "support is not exactly the permutations",
                format!("index {idx:?} has value {}", vol.value(&idx)),
            ));
        }
        if !on_perm {
            continue;
        }
        for p in 0..n.saturating_sub(1) {
            if idx[p] >= idx[p + 1] {
                continue;
            }
            let mut swapped = idx.clone();
            swapped.swap(p, p + 1);
            let expect = vol.value(&idx) * &(-Scalar::q());
            if *vol.value(&swapped) != expect {
                return Ok(CheckOutcome::fail(
                    "adjacent transposition does not scale by -q",
                    format!("indices {idx:?} -> {swapped:?}"),
                ));
            }
        }
    }

    let total: usize = shape.iter().product();
    let rev = factor_reversal_operator(n, n).expand();
    let plain_vec = vol.col().reshape(vec![total, 1]);
    let reversed_vec = vol.col_tilde().reshape(vec![total, 1]);
    if rev.matmul(&plain_vec).unwrap() != reversed_vec {
        return Ok(CheckOutcome::fail(
            "factor reversal does not carry the element to its companion",
            format!("n = {n}"),
        ));
    }

    Ok(CheckOutcome::pass(format!(
        "support, identity value, -q transposition scaling, and factor reversal all verified on {total} components"
    )))
}
