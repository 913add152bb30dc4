//! Exact rate-matrix subspaces for continuous-time Markov models.
//!
//! The crate builds model families as linear subspaces of zero row sum
//! matrices over the rationals, decides Jordan, Lie and associative closure,
//! checks invariance under permutation groups, decomposes symmetric-group
//! modules into irreducibles, and certifies uniformization stability. A
//! floating-point matrix exponential based on uniformization is provided for
//! numerical cross-checks.
//!
//! The crate is `no_std` with the default `std` feature turned off; only
//! `alloc` is required.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod algebra;
pub mod catalog;
mod error;
pub mod lp;
pub mod matrix;
pub mod perm;
pub mod rational;
pub mod subspace;
pub mod suites;
pub mod uniformization;

pub use error::Error;
pub use matrix::RationalMatrix;
pub use perm::{PermGroup, Permutation};
pub use rational::Rational;
pub use subspace::MatrixSubspace;
