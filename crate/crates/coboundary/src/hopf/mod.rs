//! Finite-dimensional Hopf algebras as exact structure tensors, coproducts
//! twisted on the right by an element of the tensor square, and the solver
//! and check chain that decide when such a twist exists and behaves.
//!
//! A twist R is judged by three conditions: the counit normalization, the
//! linear intertwiner condition moving the coproduct past its opposite, and
//! the quadratic cocycle identity, which holds exactly when the twisted
//! coproduct is coassociative.

mod catalog;
mod chain;
mod checks;
mod data;
mod solve;

pub use catalog::{catalog, load_hopf, s3, sweedler, z2, z3, CATALOG};
pub use chain::{check_hopf_chain, AlgebraChain, ChainReport};
pub use checks::{
    check_coassoc_tilde, check_cocycle, check_counit_r, check_intertwiner, check_psi_morphism,
    check_unitarity, is_unitary, CoassocReport, PsiReport,
};
pub use data::{delta_tilde, HopfData, RElement};
pub use solve::{find_r, RAnsatz, RSolutionSet};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HopfError {
    #[error("{what} must have shape {expected:?}")]
    Shape { what: &'static str, expected: Vec<usize> },
    #[error("multiplication is not associative at basis triple ({i}, {j}, {k})")]
    Associativity { i: usize, j: usize, k: usize },
    #[error("the unit does not fix basis element {i} on the {side}")]
    Unit { side: &'static str, i: usize },
    #[error("comultiplication is not coassociative at basis element {k}")]
    Coassociativity { k: usize },
    #[error("the counit axiom fails at basis element {k} on the {side}")]
    Counit { side: &'static str, k: usize },
    #[error("the antipode axiom fails at basis element {k} on the {side}")]
    Antipode { side: &'static str, k: usize },
    #[error("comultiplication is not multiplicative at basis pair ({i}, {j})")]
    ComulMultiplicative { i: usize, j: usize },
    #[error("the counit is not multiplicative at basis pair ({i}, {j})")]
    CounitMultiplicative { i: usize, j: usize },
    #[error("comultiplication does not send the unit to its tensor square")]
    ComulUnit,
    #[error("the counit does not send the unit to one")]
    CounitUnit,
    #[error("no catalog algebra named '{name}'")]
    UnknownAlgebra { name: String },
    #[error("cannot parse scalar '{text}'")]
    BadScalar { text: String },
    #[error("{what} index {index} out of range for dimension {dim}")]
    IndexOutOfRange { what: &'static str, index: usize, dim: usize },
    #[error("linear stage leaves {got} free parameters; the quadratic stage handles at most {max}")]
    TooManyParameters { got: usize, max: usize },
    #[error("algebra description is not valid JSON: {0}")]
    Json(String),
}
