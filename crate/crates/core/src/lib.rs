//! Exact computation of Donaldson structure series for simple-type
//! 4-manifolds and of the basic classes of a fiber sum along an
//! embedded genus-2 surface.
//!
//! Everything is computed in exact arithmetic over the Gaussian
//! rationals; there is no floating point in the crate. The pieces are:
//!
//! * [`exppoly`] — exponential polynomials with quadratic exponents,
//!   the value type of every series, plus exact matrices.
//! * [`quantum`] — the even quantum cohomology of the genus-2 moduli
//!   space of stable bundles as a 4-dimensional Frobenius algebra.
//! * [`series`] — Kronheimer-Mrowka structure series, manifold
//!   descriptors, series evaluation and coefficient conversions.
//! * [`pairing`] — the relative-invariant pairing pipeline: the B, A
//!   and U matrices and cap computations.
//! * [`fibersum`] — the gluing engine producing the basic classes and
//!   sum rules of a fiber sum.
//! * [`manifest`] — the JSON manifold-description file format.
//! * [`verify`] — the built-in conformance suite.
//! * [`cli`] — the `donaldson` command-line front end.

pub mod cli;
pub mod exppoly;
pub mod fibersum;
pub mod manifest;
pub mod pairing;
pub mod quantum;
pub mod series;
pub mod verify;

use thiserror::Error as ThisError;

/// Errors shared across the crate.
#[derive(Debug, Clone, ThisError)]
pub enum Error {
    #[error("exponent is quadratic in `{0}`")]
    QuadraticInVar(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix has non-constant entries")]
    NonConstantMatrix,
    #[error("sign exponent is not an integer")]
    NonIntegralSign,
    #[error("topology makes the coefficient exponent non-integral")]
    BadTopology,
    #[error("genus mismatch between the two sides")]
    GenusMismatch,
    #[error("only genus 2 is supported by this operation")]
    GenusUnsupported,
    #[error("class is not normalized: {0}")]
    NotNormalized(String),
    #[error("manifold is not of simple type")]
    NotSimpleType,
    #[error("sector mismatch: {0}")]
    SectorMismatch(String),
    #[error("cap parameters are singular: {0}")]
    SingularCap(String),
    #[error("argument out of domain: {0}")]
    OutOfDomain(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("io error: {0}")]
    Io(String),
}

pub use exppoly::{ExpElement, GaussRat, Matrix, Var};
