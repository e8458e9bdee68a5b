//! Unimodular covers of rational cones and dilated lattice polytopes.
//!
//! The crate provides, in exact arbitrary-precision arithmetic:
//!
//! * Hilbert bases of pointed rational cones ([`hilbert`]);
//! * triangulations into empty simplicial pieces and stellar
//!   subdivisions ([`subdivide`]);
//! * bounded resolution of simplicial cones into unimodular ones with a
//!   certified dilation ledger ([`resolve`]);
//! * staircase tilings by lattice translates of the standard simplices of
//!   the unit cube, slope-independent up to a computable scale ([`weyl`]);
//! * constructive unimodular covers of cones and of dilated polytopes,
//!   emitted as self-contained certificates ([`cover`]);
//! * an independent certificate verifier with exact bisection coverage
//!   checking and witness extraction ([`verify`]).
//!
//! Everything is deterministic: inputs canonicalize on construction and
//! repeated runs produce identical certificates.

pub mod cli;
pub mod cover;
pub mod document;
pub mod exactmath;
pub mod geom;
pub mod hilbert;
pub mod resolve;
pub mod subdivide;
pub mod verify;
pub mod weyl;

use thiserror::Error as ThisError;

/// Errors shared across the crate.
#[derive(Debug, ThisError)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("zero vector where a nonzero vector is required")]
    ZeroVector,
    #[error("cone is not pointed")]
    NotPointed,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("scale {given} is not admissible; minimal admissible value is {minimal}")]
    InadmissibleScale { given: String, minimal: String },
    #[error("malformed document: {0}")]
    Document(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
