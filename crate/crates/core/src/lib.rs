//! Exact, certificate-producing linear algebra over computable commutative
//! Bezout rings: diagonal reduction, adequate factorizations, stable-range
//! lifts and determinant-prescribed completion of rows.
//!
//! Supported rings are Z, Z/n, F_p[x], truncated integer-constant power
//! series (arithmetic and units only) and finite products of these.

pub mod adequate;
pub mod checkers;
pub mod complete;
pub mod error;
pub mod format;
pub mod matrix;
pub mod reduce;
pub mod ring;

pub use error::{Error, Result};
pub use matrix::Matrix;
pub use ring::{BezoutData, Elem, Ring, RingKind};
