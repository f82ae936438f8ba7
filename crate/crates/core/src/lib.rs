//! Exact computations with finite-dimensional weak Hopf algebras: groupoid
//! examples, integrals and cointegrals, duality and Frobenius properties.

pub mod algebra;
pub mod cli;
pub mod duality;
pub mod error;
pub mod exactlin;
pub mod frobenius;
pub mod groupoid;
pub mod integrals;
pub mod report;
pub mod wmha;

pub use error::{Error, Result};
