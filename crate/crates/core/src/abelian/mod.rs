// SPDX-License-Identifier: Apache-2.0

//! Exact integer linear algebra: Smith and Hermite normal forms, integer
//! kernels, saturation, and presentations of finitely generated abelian groups.

mod group;
mod hnf;
mod matrix;
pub mod rational;
mod snf;

use thiserror::Error;

pub use group::{present_group, GroupStructure, PresentedGroup};
pub use hnf::{hermite_normal_form, integer_coordinates, kernel_basis, same_lattice, saturate, Saturation};
pub use matrix::IntMatrix;
pub use rational::{solve_rational_linear, Rational};
pub use snf::{smith_normal_form, SnfResult, SnfSummary};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AbelianError {
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRow { row: usize, expected: usize, found: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("system is consistent but underdetermined (rank {rank}, {unknowns} unknowns)")]
    Underdetermined { rank: usize, unknowns: usize },
}
