//! Exact verification of Dwork-type congruences.
//!
//! The crate computes, at finite precision `(p^s, t^N)`, truncated hypergeometric series,
//! constant-term sequences of Laurent polynomials, Hasse-Witt matrices and the Cartier
//! matrix of `x^3 - x - t`, and checks the congruences relating them coefficient by
//! coefficient.

pub mod crystal;
pub mod driver;
pub mod error;
pub mod hypergeometric;
pub mod laurent;
pub mod ring;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
