//! Exact symbolic machinery for bracket-width questions on Lie algebras of
//! algebraic vector fields.
//!
//! Every constructive decomposition in this crate returns a witness that
//! can be replayed by recomputation: the solvers never claim a bracket
//! identity they have not produced exact data for.

pub mod curves;
pub mod error;
pub mod exactpoly;
pub mod poisson;
pub mod rings;
pub mod sample;
pub mod vfields;

pub use error::{Error, Result};
