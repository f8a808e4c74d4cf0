//! Stable numerical differentiation of noisy, uniformly sampled data.
//!
//! The method fits each piece of an adaptively bisected interval with a Fourier
//! extension: a trigonometric series that is periodic on a longer interval and
//! only needs to match the data on the piece itself. The local least-squares
//! problems all share one weighted sampling matrix, so its thin SVD is computed
//! once ([`PrecomputedOperators`]) and truncated per piece by a discrepancy-type
//! residual test ([`local_fourier_fit`]). Pieces whose reconstruction error at
//! full resolution exceeds a noise-weighted tolerance are split in half
//! ([`Partitioner`]). Derivatives come from term-wise differentiation of the
//! accepted series ([`reconstruct_derivative`]).
//!
//! A full-interval Tikhonov method with super-order weights is provided in
//! [`baseline`] for comparison.
//!
//! ```
//! use fexdiff_core::{differentiate, PartitionOptions, PrecomputedOperators, SignalRecord, SpectralConfig};
//!
//! let cfg = SpectralConfig::new(9, 1.0, 6.0, 2, 2.0).unwrap();
//! let ops = PrecomputedOperators::build(&cfg).unwrap();
//! let x = cfg.grid(-1.0, 1.0);
//! let y: Vec<f64> = x.iter().map(|&x| x * x).collect();
//! let signal = SignalRecord::new(-1.0, 1.0, y, 1e-8).unwrap();
//! let result = differentiate(&signal, &ops, &PartitionOptions::default()).unwrap();
//! assert!((result.dvalues[10] - 2.0 * x[10]).abs() < 1e-4);
//! ```
#![no_std]
// NaN must fail parameter checks, so they are written as negated comparisons
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod baseline;
mod config;
mod error;
mod fit;
mod interp;
mod linalg;
mod operators;
mod partition;
mod recon;

pub use config::SpectralConfig;
pub use error::{Error, Result};
pub use fit::{discrepancy_bracket_check, local_fourier_fit, truncation_residuals, LocalFit};
pub use interp::trig_upsample;
pub use linalg::{CMatrix, Complex};
pub use operators::PrecomputedOperators;
pub use partition::{
    accept_test, downsample, PartitionLeaf, PartitionOptions, PartitionResult, Partitioner,
    SignalRecord,
};
pub use recon::{
    differentiate, reconstruct_derivative, reconstruct_derivative_order,
    reconstruct_derivative_order_capped, reconstruct_function, DerivativeResult, DEFAULT_MAX_ORDER,
};
