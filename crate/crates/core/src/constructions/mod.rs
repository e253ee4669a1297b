//! Algebraic and convex-analytic devices that reduce general polynomial
//! traces to Hermitian power traces:
//!
//! * polarization of `A^d` into Hermitian `d`-th powers,
//! * the cyclic block dilation turning a monomial trace into a power trace,
//! * the unitary DFT matrix behind the polarization inversion,
//! * the split of an odd power trace into two convex spectral functions,
//! * Schatten-ball truncation and a sampled lower bound of the minimal
//!   convex extension of `A ↦ tr A^d` off the ball.

mod extension;

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::matkernel::{herm_eigvals, HermitianMatrix, Matrix, SpectralTolerance};
use crate::{math, Error, Result, C64};

pub use extension::{
    convex_extension_lb, extension_lb_on_support, power_trace_gradient, sample_support, TruncationSpec,
};

/// One summand `phase · y^d` of the Hermitian polarization of `A^d`.
#[derive(Clone, Debug)]
pub struct PolarizationTerm {
    /// `e^{iπjd/(d+1)}`
    pub phase: C64,
    /// `Y_θ = e^{−iθ}A + e^{iθ}A*` at `θ = πj/(d+1)`
    pub y: HermitianMatrix,
}

/// The `d+1` terms with `A^d = (1/(d+1)) Σ_j phase_j · y_j^d`.
pub fn polarization_terms(a: &Matrix, d: u32) -> Result<Vec<PolarizationTerm>> {
    a.require_square()?;
    if d == 0 {
        return Err(Error::InvalidParameter("degree must be at least 1"));
    }
    let adj = a.adjoint();
    // θ_j = πj/(d+1) = 2π·j/(2(d+1))
    let turns = 2 * (d as u64 + 1);
    (0..=d as u64)
        .map(|j| {
            let rot = root_of_unity(turns - j, turns);
            let mut y = a.scale(rot);
            y.add_scaled(rot.conj(), &adj)?;
            // exact symmetry: average with the adjoint
            let y = HermitianMatrix::hermitian_part(&y)?;
            Ok(PolarizationTerm {
                phase: root_of_unity(j * d as u64, turns),
                y,
            })
        })
        .collect()
}

/// Recombines polarization terms into `(1/(d+1)) Σ_j phase_j · y_j^d`.
pub fn polarization_sum(terms: &[PolarizationTerm], d: u32) -> Result<Matrix> {
    let first = terms.first().ok_or(Error::InvalidParameter("no polarization terms"))?;
    let n = first.y.n();
    let mut acc = Matrix::zeros(n, n);
    let w = 1.0 / terms.len() as f64;
    for t in terms {
        acc.add_scaled(t.phase * w, &t.y.pow(d)?)?;
    }
    Ok(acc)
}

/// `‖A^d − (1/(d+1)) Σ_j (A + ω^j B)^d‖_∞` (entrywise), `ω = e^{2πi/(d+1)}`.
pub fn polarize_pair(a: &Matrix, b: &Matrix, d: u32) -> Result<f64> {
    a.require_square()?;
    a.require_same_shape(b)?;
    if d == 0 {
        return Err(Error::InvalidParameter("degree must be at least 1"));
    }
    let n = a.rows();
    let k = d + 1;
    let mut acc = Matrix::zeros(n, n);
    for j in 0..k {
        let omega = root_of_unity(j as u64, k as u64);
        let mut m = a.clone();
        m.add_scaled(omega, b)?;
        acc.add_scaled(C64::new(1.0 / k as f64, 0.0), &m.pow(d)?)?;
    }
    a.pow(d)?.max_entry_distance(&acc)
}

/// `e^{2πi·num/den}` with exact values at the quarter turns.
fn root_of_unity(num: u64, den: u64) -> C64 {
    let r = num % den;
    if 4 * r % den == 0 {
        return match 4 * r / den {
            0 => C64::new(1.0, 0.0),
            1 => C64::new(0.0, 1.0),
            2 => C64::new(-1.0, 0.0),
            _ => C64::new(0.0, -1.0),
        };
    }
    C64::from_polar(1.0, 2.0 * PI * r as f64 / den as f64)
}

/// Block matrix of size `dn` with `Y_1, …, Y_{d−1}` on the block
/// superdiagonal and `Y_d` in the lower-left corner; its `d`-th power is
/// block diagonal with the cyclic products `Y_k ⋯ Y_d Y_1 ⋯ Y_{k−1}`.
pub fn cyclic_dilation(ys: &[Matrix]) -> Result<Matrix> {
    let first = ys.first().ok_or(Error::InvalidParameter("dilation needs at least one block"))?;
    let n = first.require_square()?;
    for y in ys {
        first.require_same_shape(y)?;
    }
    let d = ys.len();
    let mut x = Matrix::zeros(d * n, d * n);
    for (k, y) in ys.iter().enumerate() {
        let row = k;
        let col = (k + 1) % d;
        x.set_block(row * n, col * n, y);
    }
    Ok(x)
}

/// `k x k` unitary DFT matrix, entries `e^{2πijl/k}/√k`.
pub fn fourier_matrix(k: usize) -> Result<Matrix> {
    if k < 2 {
        return Err(Error::InvalidParameter("Fourier matrix size must be at least 2"));
    }
    let s = 1.0 / math::sqrt(k as f64);
    Ok(Matrix::from_fn(k, k, |j, l| root_of_unity((j * l) as u64, k as u64) * s))
}

/// `(Σ λ₊^d, Σ λ₋^d)` for odd `d ≥ 3`; their difference is `tr A^d`.
pub fn odd_power_split(a: &HermitianMatrix, d: u32) -> Result<(f64, f64)> {
    if d < 3 || d % 2 == 0 {
        return Err(Error::InvalidParameter("odd_power_split needs an odd degree >= 3"));
    }
    let eig = herm_eigvals(a, SpectralTolerance::default())?;
    let mut plus = 0.0;
    let mut minus = 0.0;
    for l in eig {
        if l > 0.0 {
            plus += math::powi(l, d);
        } else {
            minus += math::powi(-l, d);
        }
    }
    Ok((plus, minus))
}
