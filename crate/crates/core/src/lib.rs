//! Leading-term asymptotics of Taylor coefficients along diagonals for
//! bivariate rational functions
//!
//! ```text
//! F(z, w) = P(z, w) / prod_i (1 - a_i z - b_i w) = sum f(x, y) z^x w^y
//! ```
//!
//! whose singular set is a union of lines in general position with positive
//! coefficients.
//!
//! The crate is organised bottom-up:
//!
//! - [`model`]: exact domain types, determinants and hypothesis checks.
//! - [`series`]: exact Taylor coefficients (two independent routes) and
//!   overflow-free logarithms of huge rationals.
//! - [`fan`]: the polygon `M`, the cone fan of diagonal directions, saddle
//!   points and an independent argmax oracle.
//! - [`parfrac`]: the constants `A_ij` with `1/prod Q = sum A_ij/(Q_i Q_j)`.
//! - [`asym`]: the leading asymptotic term for a direction `(p, q)`.
//! - [`harness`]: convergence and Horn-vector experiments against the exact
//!   series.
//!
//! Everything is `no_std` + `alloc`; I/O lives in the companion CLI crate.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod asym;
pub mod error;
pub mod fan;
pub mod harness;
pub mod model;
pub mod parfrac;
pub mod series;

pub use error::Error;
pub use model::{GFModel, LinearFactor, Poly2, Rational};

pub type Result<T, E = Error> = core::result::Result<T, E>;
