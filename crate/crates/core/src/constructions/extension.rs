use alloc::vec::Vec;

use crate::ensembles::{sample, EnsembleKind, EnsembleSpec};
use crate::matkernel::{herm_eigvals, HermitianMatrix, SpectralTolerance};
use crate::rng::Seed;
use crate::{math, Error, Result};

/// Shrink factor keeping support points strictly inside the open ball.
const INTERIOR: f64 = 1.0 - 1e-9;

/// The open Schatten ball `K_a = {A : ‖A‖_{2(d−1)} < a}` on which
/// `A ↦ tr A^d` is `d·a^{d−1}`-Lipschitz in the Hilbert–Schmidt norm.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TruncationSpec {
    a: f64,
    d: u32,
}

impl TruncationSpec {
    pub fn new(a: f64, d: u32) -> Result<Self> {
        if !(a > 0.0) || !a.is_finite() {
            return Err(Error::InvalidParameter("truncation radius must be positive"));
        }
        if d < 2 {
            return Err(Error::InvalidParameter("truncation degree must be at least 2"));
        }
        Ok(Self { a, d })
    }

    pub fn radius(&self) -> f64 {
        self.a
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    /// Schatten index `2(d−1)` of the ball.
    pub fn norm_index(&self) -> u32 {
        2 * (self.d - 1)
    }

    pub fn lipschitz_constant(&self) -> f64 {
        self.d as f64 * math::powi(self.a, self.d - 1)
    }

    /// `‖A‖_{2(d−1)}` from the spectrum.
    pub fn norm(&self, a: &HermitianMatrix) -> Result<f64> {
        let p = self.norm_index();
        let eig = herm_eigvals(a, SpectralTolerance::default())?;
        let top = eig.iter().map(|l| l.abs()).fold(0.0, f64::max);
        if top == 0.0 {
            return Ok(0.0);
        }
        let s: f64 = eig.iter().map(|l| math::powi(l.abs() / top, p)).sum();
        Ok(top * math::powf(s, 1.0 / p as f64))
    }

    pub fn contains(&self, a: &HermitianMatrix) -> Result<bool> {
        Ok(self.norm(a)? < self.a)
    }

    /// Radial projection of `A` onto `(1 − 1e−9)·K_a`; `A` itself if inside.
    pub fn project(&self, a: &HermitianMatrix) -> Result<HermitianMatrix> {
        let r = self.norm(a)?;
        let limit = INTERIOR * self.a;
        Ok(if r <= limit { a.clone() } else { a.scale_real(limit / r) })
    }
}

/// Gradient of `A ↦ tr A^d` for the real inner product `Re tr(A B)`:
/// `d·A^{d−1}`.
pub fn power_trace_gradient(a: &HermitianMatrix, d: u32) -> Result<HermitianMatrix> {
    if d == 0 {
        return Err(Error::InvalidParameter("degree must be at least 1"));
    }
    let g = a.pow(d - 1)?.scale_real(d as f64);
    HermitianMatrix::hermitian_part(&g)
}

/// `count` points of `K_a`: Gaussian (complex Wigner) directions scaled to
/// a uniform fraction of the radius. Point `k` depends only on
/// `seed.derive(k)`.
pub fn sample_support(trunc: &TruncationSpec, n: usize, count: usize, seed: Seed) -> Result<Vec<HermitianMatrix>> {
    let spec = EnsembleSpec::new(EnsembleKind::WignerGaussianComplex);
    (0..count as u64)
        .map(|k| {
            let child = seed.derive(k);
            let g = HermitianMatrix::new(sample(&spec, n, child)?)?;
            let norm = trunc.norm(&g)?;
            let frac = child.derive(0).stream().uniform();
            Ok(g.scale_real(INTERIOR * trunc.a * frac / norm))
        })
        .collect()
}

/// Supporting hyperplane value `tr Y^d + d·tr(Y^{d−1}(A − Y))`.
fn tangent_value(y: &HermitianMatrix, a: &HermitianMatrix, d: u32) -> Result<f64> {
    let y_pow = y.pow(d - 1)?;
    let diff = a.combine(1.0, y, -1.0)?;
    let value = y_pow.trace_of_product(y)?.re + d as f64 * y_pow.trace_of_product(&diff)?.re;
    Ok(value)
}

/// Largest supporting-hyperplane value at `A` over the support points
/// inside `K_a` together with the projection of `A` onto `K_a`.
///
/// For even `d`, `tr A^d` is convex on Hermitian matrices, and each term is
/// the value at `A` of an affine minorant that is tight at a point of
/// `K_a`. The result is therefore a lower bound for the minimal convex
/// extension of `tr A^d |K_a`, hence at most `tr A^d`, and it equals
/// `tr A^d` whenever `A` lies in the ball.
pub fn extension_lb_on_support(trunc: &TruncationSpec, a: &HermitianMatrix, support: &[HermitianMatrix]) -> Result<f64> {
    let d = trunc.d;
    if d % 2 == 1 {
        return Err(Error::InvalidParameter(
            "convex extension needs an even degree; split odd powers first",
        ));
    }
    let mut best = tangent_value(&trunc.project(a)?, a, d)?;
    for y in support {
        if y.n() != a.n() {
            return Err(Error::ShapeMismatch {
                expected: (a.n(), a.n()),
                found: (y.n(), y.n()),
            });
        }
        if trunc.contains(y)? {
            best = best.max(tangent_value(y, a, d)?);
        }
    }
    Ok(best)
}

/// [`extension_lb_on_support`] over `support_count` points from
/// [`sample_support`].
pub fn convex_extension_lb(trunc: &TruncationSpec, a: &HermitianMatrix, support_count: usize, seed: Seed) -> Result<f64> {
    if support_count == 0 {
        return Err(Error::InvalidParameter("support_count must be at least 1"));
    }
    if trunc.d % 2 == 1 {
        return Err(Error::InvalidParameter(
            "convex extension needs an even degree; split odd powers first",
        ));
    }
    let support = sample_support(trunc, a.n(), support_count, seed)?;
    extension_lb_on_support(trunc, a, &support)
}
