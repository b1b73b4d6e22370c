//! Oscillator to Smorodinsky–Winternitz reduction: wavefunctions, spectra,
//! boson algebra and generator matrix elements.

// `!(x > 0.0)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bosonalg;
pub mod coords;
pub mod diffops;
pub mod error;
pub mod half;
pub mod oscillator;
pub mod quadrature;
pub mod specfun;
pub mod suite;
pub mod swreduce;
pub mod wave;
pub mod wigner;

pub use error::{Error, Result};
pub use half::Half;
