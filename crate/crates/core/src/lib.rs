// SPDX-License-Identifier: Apache-2.0

//! Exact lattice and class-group computations for Coble surfaces, their
//! contractions to surfaces with `1/4(1,1)` points, and the Q-Gorenstein
//! smoothings of those contractions.
//!
//! All arithmetic is over `Z` and `Q` with arbitrary precision.

#![allow(clippy::needless_range_loop)]

pub mod abelian;
pub mod enriques;
pub mod qlattice;
pub mod scenarios;
pub mod singular;
pub mod surface;

pub use abelian::{IntMatrix, PresentedGroup, Rational};
pub use enriques::{Check, CheckStatus, CobleSurfaceData, VerificationReport};
pub use qlattice::{QuadLattice, Signature};
pub use scenarios::ScenarioId;
pub use singular::{CyclicQuotient, HJChain};
pub use surface::{contract, parse_surface, ContractedSurface, DivisorClass, SurfaceModel};
