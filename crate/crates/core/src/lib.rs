//! Quantum Latin squares, Hadamard families and the mutually unbiased
//! maximally entangled bases they generate.
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is a pure
//! function over immutable values; file formats, the command-line driver and
//! the worker pool live in the `qlsmub` companion crate.
//!
//! Conventions used throughout:
//!
//! * grids are stored row-major, `entry(row, col)`;
//! * a bipartite amplitude for `|k, p⟩` lives at flat index `k * n + p`;
//! * basis states and error-basis members built from an `(i, j)` label sit at
//!   flat index `i * n + j`;
//! * Hadamard matrices are unnormalized: unimodular entries, `H H† = n I`.

#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bases;
pub mod error;
pub mod fixtures;
pub mod hadamard;
pub mod numerics;
pub mod search;
pub mod squares;
pub mod ueb;

pub use error::{Error, Result};
pub use numerics::{CMatrix, CVector, DensityMatrix, C64};

/// Default absolute tolerance for structural predicates.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Default threshold above which a commutator norm counts as nonzero.
pub const DEFAULT_THRESHOLD: f64 = 1e-6;
