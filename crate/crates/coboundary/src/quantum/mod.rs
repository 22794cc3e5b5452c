//! The standard q-deformation R-matrix with its braid forms, q-deformed
//! volume elements, relation presentations for the two unitary matrix
//! families and their certified compatibility checks: braid-relation spans,
//! the composite-matrix gauge statement, the reindexing isomorphism between
//! the two presentations, and the scalar that volume contraction assigns to
//! the starred matrix.
//!
//! Convention, fixed crate-wide: the operator acting in relation sets is the
//! braid R·P (P the factor swap), and the twisted side uses P·R, which is
//! the braid of P·R·P.  The plain matrix R is what QYBE and the conjugation
//! checks are stated on.

mod gauge;
mod iso;
mod relations;
mod rmatrix;
mod volume;

pub use gauge::{check_quantum_gauge, GaugeEntry, QuantumGaugeReport};
pub use iso::{check_isomorphism, IsoDirectionReport, IsoReport};
pub use relations::{
    check_eq17_frt, check_eq18_derivation, check_uinv_volume, relations_b, relations_b_on,
    relations_frt, relations_star_partner, relations_suq, relations_suq_on, single_family,
    unitarity_relations, volume_normalization_relation, QuantumFamily, UinvVolumeReport,
};
pub use rmatrix::{check_eq22, check_eq22_with, check_qybe, RMatrixData};
pub use volume::{check_volume_element, VolumeElement};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuantumError {
    #[error("{what} needs n >= {min}, got {n}")]
    TooSmall { what: &'static str, n: usize, min: usize },
    #[error(transparent)]
    Engine(#[from] crate::ncalg::NcError),
}
