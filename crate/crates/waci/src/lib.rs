//! Exact computation with weighted artinian complete intersections.
//!
//! Everything here runs over arbitrary-precision rationals; there is no
//! floating point anywhere in the crate. The main pipelines are:
//!
//! * [`poly`] / [`quotient`]: weighted polynomial rings, Gröbner bases,
//!   graded monomial bases and Hilbert polynomials;
//! * [`derivations`] / [`homotopy`]: graded derivation spaces and the
//!   pseudo-homotopy invariants deciding simplicity;
//! * [`duality`] / [`quadform`] / [`smoothing`]: Poincaré pairings,
//!   signatures, Witt-residue integrality and the surgery obstructions;
//! * [`geodesic`]: the monomial-action characteristic-polynomial
//!   obstruction forcing isometry-invariant geodesics;
//! * [`families`]: generators for the standard example families.

pub mod derivations;
pub mod duality;
pub mod families;
pub mod geodesic;
pub mod homotopy;
pub mod linalg;
pub mod poly;
pub mod quadform;
pub mod quotient;
pub mod smoothing;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ring mismatch: operands live in different weighted rings")]
    RingMismatch,
    #[error("algebra mismatch: operands are attached to different quotient algebras")]
    AlgebraMismatch,
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("quotient is not artinian: {0}")]
    NotArtinian(String),
    #[error("not a weighted artinian complete intersection: {0}")]
    NotWaci(String),
    #[error("not a Poincare duality algebra: {0}")]
    NotPda(String),
    #[error("degenerate quadratic form")]
    Degenerate,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal consistency check failed: {0}")]
    ConsistencyFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
