//! Exact combinatorics and transforms for operator-valued conditionally
//! free (c-free) probability.
//!
//! The crate is organised bottom-up: [`exactalg`] provides exact complex
//! rationals, matrices and truncated series; [`partitions`] and [`trees`]
//! the combinatorial index sets; [`cumulants`] the moment and cumulant
//! conversions; [`model`] a constructive c-free pair; [`transforms`] the
//! T-transforms and their multiplicativity; [`divisibility`] the
//! floating-point checks for unitaries; [`verify`] the seeded identity
//! suites.

pub mod cumulants;
pub mod divisibility;
pub mod error;
pub mod exactalg;
pub mod model;
pub mod partitions;
pub mod random;
pub mod transforms;
pub mod trees;
pub mod verify;

pub use error::{Error, Result};
