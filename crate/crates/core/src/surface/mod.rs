// SPDX-License-Identifier: Apache-2.0

//! Picard lattices of rational surfaces, blow-ups, and Mumford intersection
//! theory on contractions of negative-definite boundary chains.

mod class;
mod contract;
mod format;
mod model;

use thiserror::Error;

use crate::abelian::AbelianError;
use crate::qlattice::{LatticeError, Signature};

pub use class::{BasisId, DivisorClass};
pub use contract::{contract, ContractedSurface, GeneralFiberPicard};
pub use format::parse_surface;
pub use model::{NamedClass, SurfaceModel};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("expected {expected} coefficients")]
    DimensionMismatch { expected: usize },
    #[error("Gram matrix is not symmetric at ({0}, {1})")]
    AsymmetricGram(String, String),
    #[error("classes belong to different surfaces")]
    BasisMismatch,
    #[error("class {0} is not integral")]
    NonIntegral(String),
    #[error("nothing to contract: boundary is empty")]
    EmptyBoundary,
    #[error("boundary Gram is not negative definite (signature {0})")]
    BoundaryNotNegativeDefinite(Signature),
    #[error("parity of {0} against the last boundary curve disagrees with the chain")]
    ParityInconsistent(String),
    #[error("boundary pairings are not all even; the parity map is not defined on the class group")]
    ParityNotWellDefined,
    #[error("torsion of the class group does not pair evenly with the boundary")]
    TorsionNotInGeneralFiber,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Abelian(#[from] AbelianError),
}
