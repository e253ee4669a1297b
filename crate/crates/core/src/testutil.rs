//! Random fixtures shared by the unit tests.

use crate::matkernel::{HermitianMatrix, Matrix};
use crate::rng::Seed;
use crate::C64;

pub fn random_matrix(n: usize, seed: u64) -> Matrix {
    let mut r = Seed(seed).stream();
    Matrix::from_fn(n, n, |_, _| C64::new(r.gaussian(), r.gaussian()))
}

pub fn random_hermitian(n: usize, seed: u64) -> HermitianMatrix {
    HermitianMatrix::hermitian_part(&random_matrix(n, seed)).unwrap()
}
