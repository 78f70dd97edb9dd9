//! Exact computer algebra for super Lie groups built from super Harish-Chandra
//! pairs: PBW normal forms in the super enveloping algebra, coordinate Hopf
//! algebras for the reduced group, Koszul-style global sections with the group
//! operation pullbacks, action reconstruction from infinitesimal data,
//! stabilizers, homogeneous-space invariants, and a Grassmann-number
//! evaluation oracle. All arithmetic is exact rational.

pub mod rat;
pub mod spoly;
pub mod linalg;
pub mod report;
pub mod algebra;
pub mod uea;
pub mod hopf;
pub mod shcp;
pub mod section;
pub mod grassmann;
pub mod actions;
pub mod homogeneous;
pub mod standard;

pub use rat::{rat, rint, Rat};
pub use report::{Report, Violation};

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum AlgebraError {
    #[error("element is not invertible: {0}")]
    NotInvertible(String),
    #[error("inversion of an element with zero body: {0}")]
    ZeroBody(String),
    #[error("malformed element: {0}")]
    Malformed(String),
    #[error("rewriting did not terminate within the fuel limit (corrupted bracket table?)")]
    FuelExhausted,
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("parity mismatch: {0}")]
    ParityMismatch(String),
}
