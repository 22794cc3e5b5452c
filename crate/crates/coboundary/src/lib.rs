//! Exact-arithmetic toolkit for verifying coboundary Poisson structures on
//! matrix groups, their quantized relation algebras, and twisted coproducts
//! on finite-dimensional Hopf algebras.
//!
//! All computation is exact: scalars are rational functions in a formal
//! parameter `q` with coefficients in a cyclotomic field, so every check in
//! this crate decides equality syntactically, never numerically.

pub mod scalar;

pub mod linalg;

pub mod mpoly;

pub mod sample;

pub mod classical;

pub mod ncalg;

pub mod quantum;

pub mod hopf;

pub mod report;

pub use scalar::Scalar;
