//! Multiplicities of graded length functions.
//!
//! A length function `λ: ℤ → ℕ` is given by an explicit window of values and
//! quasi-polynomial (or vanishing) tails at both ends. This crate computes
//! its Hilbert quasi-polynomials, complexity, Herbrand difference, the
//! multiplicities `e^s`/`e_s`, Koszul reductions, and the limit estimator,
//! all in exact rational arithmetic.

pub mod algebra;
pub mod catalog;
pub mod difference;
pub mod error;
pub mod fixture;
pub mod koszul;
pub mod length;
pub mod multiplicity;
pub mod random;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
