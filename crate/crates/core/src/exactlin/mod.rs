//! Exact arithmetic over ℚ(i) and dense exact linear algebra.
//!
//! Every check in this crate is a zero-tolerance equality, so nothing here
//! uses floating point. Elimination is plain Gauss-Jordan over the field;
//! the systems are small and sparse enough that coefficient growth never
//! shows up in practice.

mod matrix;
mod scalar;

pub use matrix::*;
pub use scalar::Scalar;
