//! Numerical laboratory for eigenvalue bounds of Schrödinger operators
//! -Δ + V with complex potentials.

mod dd;
mod fft;
pub mod birman_schwinger;
pub mod bounds;
pub mod eigensolvers;
pub mod error;
pub mod experiments;
pub mod fourier;
pub mod kernels;
pub mod potential;
pub mod quadrature;
pub mod quasimode;
pub mod sweep;

pub use error::{Error, Result};
