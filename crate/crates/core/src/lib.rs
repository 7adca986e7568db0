//! Growth functions, VC-dimension and VC-density estimation, sample-complexity
//! bounds, and exact uniform-convergence checks for small parameterized
//! binary classifiers.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, CSV output and
//! the command-line driver live in the `vcdens-cli` companion crate.
//!
//! Layout:
//! * [`hypothesis`]: activations, layered networks, and the exact baseline
//!   classes (affine thresholds, unions of at most `m` points, explicit
//!   finite trace lists).
//! * [`dichotomy`]: point sets, traces, margin-LP realizability, dichotomy
//!   counting, shattering, brute-force VC-dimension, growth curves and the
//!   log-log density fit.
//! * [`bounds`]: the growth-function and Rademacher sample-size bounds with
//!   integer solvers that re-check every closed form.
//! * [`uc`]: finite-support distributions and Monte Carlo measurement of the
//!   worst-case deviation between true and empirical 0-1 loss.

#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod class;
pub mod dichotomy;
mod error;
pub mod hypothesis;
pub(crate) mod math;
pub mod rng;
pub mod uc;

pub use class::HypothesisClass;
pub use error::{CoreError, Result};
