use alloc::vec::Vec;

use super::{herm_eigvals, HermitianMatrix, Matrix, SpectralTolerance};
use crate::{math, Error, Result, C64};

/// Schatten index `p ∈ [1, ∞]`, with `∞` as its own variant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SchattenIndex {
    Finite(f64),
    Infinity,
}

impl SchattenIndex {
    pub fn finite(p: f64) -> Result<Self> {
        let idx = SchattenIndex::Finite(p);
        idx.validate()?;
        Ok(idx)
    }

    fn validate(self) -> Result<()> {
        match self {
            SchattenIndex::Finite(p) if !(p >= 1.0) || !p.is_finite() => {
                Err(Error::InvalidParameter("Schatten index must satisfy p >= 1"))
            }
            _ => Ok(()),
        }
    }
}

/// Singular values of `A`, nonincreasing, as square roots of the
/// eigenvalues of `A*A`.
pub fn singular_values(a: &Matrix) -> Result<Vec<f64>> {
    let gram = HermitianMatrix::hermitian_part(&(&a.adjoint() * a))?;
    let eig = herm_eigvals(&gram, SpectralTolerance::default())?;
    Ok(eig.into_iter().map(|l| math::sqrt(l.max(0.0))).collect())
}

/// Schatten `p`-norm: the `ℓ_p` norm of the singular values.
pub fn schatten_norm(a: &Matrix, p: SchattenIndex) -> Result<f64> {
    p.validate()?;
    let sv = singular_values(a)?;
    Ok(match p {
        SchattenIndex::Infinity => sv.first().copied().unwrap_or(0.0),
        SchattenIndex::Finite(p) => {
            let top = sv.first().copied().unwrap_or(0.0);
            if top == 0.0 {
                return Ok(0.0);
            }
            // scale by the largest singular value to avoid overflow for big p
            let sum: f64 = sv.iter().map(|s| math::powf(s / top, p)).sum();
            top * math::powf(sum, 1.0 / p)
        }
    })
}

/// `tr A^d`.
pub fn power_trace(a: &Matrix, d: u32) -> Result<C64> {
    a.require_square()?;
    if d == 0 {
        return Err(Error::InvalidParameter("power must be at least 1"));
    }
    let half = a.pow(d / 2)?;
    if d % 2 == 0 {
        half.trace_of_product(&half)
    } else {
        half.try_mul(a)?.trace_of_product(&half)
    }
}
