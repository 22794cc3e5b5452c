//! Dense exact tensors, permutation operators on tensor powers, and exact
//! linear solving. Everything is over the scalar field; no floating point.

mod perm;
mod solve;
mod tensor;

pub use perm::{factor_reversal_operator, total_permutation_matrix, PermutationOp};
pub use solve::{solve_linear, LinearSolution};
pub(crate) use tensor::indices as multi_indices;
pub use tensor::{ShapeError, Tensor};

