//! Numerical toolkit for trace concentration of noncommutative polynomials
//! in random matrices.
//!
//! The crate is `no_std` and only needs `alloc`. It contains the dense
//! complex matrix kernel, the `*`-polynomial algebra, seeded random matrix
//! ensembles, the polarization/dilation/convex-extension constructions,
//! the semicircular (free) moment oracle and the tail statistics used by
//! the Monte Carlo harness in `nctrace-lab`.
//!
//! All operations are pure functions of their inputs. Randomness enters
//! only through explicit [`rng::Seed`] values, so every sample can be
//! reproduced from a master seed and a replica index.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod constructions;
pub mod ensembles;
mod error;
pub mod freeprob;
pub(crate) mod math;
pub mod matkernel;
pub mod ncpoly;
pub mod rng;
pub mod tails;
#[cfg(test)]
mod testutil;

pub use error::{Error, ParseError, ParseErrorKind};
pub use matkernel::{HermitianMatrix, Matrix, SchattenIndex, SpectralTolerance};
pub use ncpoly::{Letter, Polynomial, Word};
pub use num_complex;

/// Double precision complex scalar used throughout the crate.
pub type C64 = num_complex::Complex<f64>;

pub type Result<T, E = Error> = core::result::Result<T, E>;
