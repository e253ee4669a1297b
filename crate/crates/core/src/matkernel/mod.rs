//! Dense complex matrix kernel.
//!
//! Row-major `f64` complex matrices with products, adjoints, traces,
//! Hermitian eigenvalues (cyclic Jacobi, plus a Householder/Sturm path for
//! large matrices) and Schatten norms.

mod eigen;
mod matrix;
mod norms;
mod qr;

pub use eigen::{herm_eigvals, herm_eigvals_tridiagonal, hermitian_spectral_norm, SpectralTolerance};
pub use matrix::{HermitianMatrix, Matrix, HERMITIAN_TOL};
pub use norms::{power_trace, schatten_norm, SchattenIndex};
pub use qr::{determinant, householder_qr, QrFactors};
