//! Seeded samplers for the random matrix ensembles.
//!
//! Every sampler is a pure function of `(spec, n, seed)`: the entries are
//! drawn in a fixed order from the counter stream keyed by the seed.
//! Replica-level randomness comes from [`Seed::derive`], never from shared
//! RNG state.

use core::fmt;
use core::str::FromStr;

use crate::matkernel::{householder_qr, determinant, HermitianMatrix, Matrix};
use crate::rng::{CounterRng, Seed};
use crate::{math, Error, Result, C64};

/// The catalog of centered ensembles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EnsembleKind {
    WignerGaussianReal,
    WignerGaussianComplex,
    WignerRademacher,
    WignerUniformBounded,
    HaarOrthogonalScaled,
    HaarUnitaryScaled,
    HsSphereReal,
    HsSphereComplex,
}

impl EnsembleKind {
    pub const ALL: [EnsembleKind; 8] = [
        EnsembleKind::WignerGaussianReal,
        EnsembleKind::WignerGaussianComplex,
        EnsembleKind::WignerRademacher,
        EnsembleKind::WignerUniformBounded,
        EnsembleKind::HaarOrthogonalScaled,
        EnsembleKind::HaarUnitaryScaled,
        EnsembleKind::HsSphereReal,
        EnsembleKind::HsSphereComplex,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EnsembleKind::WignerGaussianReal => "wigner_gaussian_real",
            EnsembleKind::WignerGaussianComplex => "wigner_gaussian_complex",
            EnsembleKind::WignerRademacher => "wigner_rademacher",
            EnsembleKind::WignerUniformBounded => "wigner_uniform_bounded",
            EnsembleKind::HaarOrthogonalScaled => "haar_orthogonal_scaled",
            EnsembleKind::HaarUnitaryScaled => "haar_unitary_scaled",
            EnsembleKind::HsSphereReal => "hs_sphere_real",
            EnsembleKind::HsSphereComplex => "hs_sphere_complex",
        }
    }

    pub fn is_wigner(self) -> bool {
        matches!(
            self,
            EnsembleKind::WignerGaussianReal
                | EnsembleKind::WignerGaussianComplex
                | EnsembleKind::WignerRademacher
                | EnsembleKind::WignerUniformBounded
        )
    }

    /// Samples are Hermitian (Wigner and sphere kinds).
    pub fn is_hermitian(self) -> bool {
        !matches!(self, EnsembleKind::HaarOrthogonalScaled | EnsembleKind::HaarUnitaryScaled)
    }
}

impl fmt::Display for EnsembleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EnsembleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        EnsembleKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or(Error::InvalidParameter("unknown ensemble kind"))
    }
}

/// An ensemble with its variance parameters (used by Wigner kinds only).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnsembleSpec {
    pub kind: EnsembleKind,
    pub diag_variance: f64,
    pub offdiag_variance: f64,
}

impl EnsembleSpec {
    /// Unit variances on and off the diagonal.
    pub fn new(kind: EnsembleKind) -> Self {
        Self {
            kind,
            diag_variance: 1.0,
            offdiag_variance: 1.0,
        }
    }

    pub fn with_variances(kind: EnsembleKind, diag_variance: f64, offdiag_variance: f64) -> Result<Self> {
        let spec = Self {
            kind,
            diag_variance,
            offdiag_variance,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.diag_variance.is_finite() || self.diag_variance < 0.0 {
            return Err(Error::InvalidParameter("diagonal variance must be finite and nonnegative"));
        }
        if !self.offdiag_variance.is_finite() || self.offdiag_variance <= 0.0 {
            return Err(Error::InvalidParameter("off-diagonal variance must be finite and positive"));
        }
        Ok(())
    }
}

impl From<EnsembleKind> for EnsembleSpec {
    fn from(kind: EnsembleKind) -> Self {
        Self::new(kind)
    }
}

/// Subgaussian constants `(K, κ)` of a convex concentration bound
/// `P[|f(X) − M f(X)| ≥ t] ≤ K e^{−κ t²}`. Only ever known empirically.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CcpParams {
    k: f64,
    kappa: f64,
}

impl CcpParams {
    pub fn new(k: f64, kappa: f64) -> Result<Self> {
        if !(k > 0.0 && k.is_finite()) || !(kappa > 0.0 && kappa.is_finite()) {
            return Err(Error::InvalidParameter("CCP constants must be positive"));
        }
        Ok(Self { k, kappa })
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn tail_bound(&self, t: f64) -> f64 {
        (self.k * math::exp(-self.kappa * t * t)).min(1.0)
    }
}

/// Draws one `n x n` matrix from `spec`.
pub fn sample(spec: &EnsembleSpec, n: usize, seed: Seed) -> Result<Matrix> {
    spec.validate()?;
    if n == 0 {
        return Err(Error::InvalidParameter("matrix size must be positive"));
    }
    let scale = math::sqrt(n as f64);
    Ok(match spec.kind {
        EnsembleKind::HaarOrthogonalScaled => haar_unitary(n, seed, false, true)?.scale_real(scale),
        EnsembleKind::HaarUnitaryScaled => haar_unitary(n, seed, false, false)?.scale_real(scale),
        EnsembleKind::HsSphereReal => hs_sphere_sample(n, true, seed).into_matrix(),
        EnsembleKind::HsSphereComplex => hs_sphere_sample(n, false, seed).into_matrix(),
        _ => wigner(spec, n, seed).into_matrix(),
    })
}

/// Wigner matrix: upper triangle i.i.d., diagonal independent, lower
/// triangle by Hermitian symmetry. Entries are drawn row by row.
fn wigner(spec: &EnsembleSpec, n: usize, seed: Seed) -> HermitianMatrix {
    let mut rng = seed.stream();
    let sd_diag = math::sqrt(spec.diag_variance);
    let sd_off = math::sqrt(spec.offdiag_variance);
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let z = if i == j {
                C64::new(sd_diag * real_unit_variate(spec.kind, &mut rng), 0.0)
            } else {
                off_diagonal_variate(spec.kind, &mut rng) * sd_off
            };
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    HermitianMatrix::new(m).expect("symmetric by construction")
}

/// Real, centered, unit variance.
fn real_unit_variate(kind: EnsembleKind, rng: &mut CounterRng) -> f64 {
    match kind {
        EnsembleKind::WignerRademacher => rng.sign(),
        EnsembleKind::WignerUniformBounded => (2.0 * rng.uniform() - 1.0) * math::sqrt(3.0),
        _ => rng.gaussian(),
    }
}

/// Centered with `E|z|² = 1`; complex only for the complex Gaussian kind.
fn off_diagonal_variate(kind: EnsembleKind, rng: &mut CounterRng) -> C64 {
    match kind {
        EnsembleKind::WignerGaussianComplex => {
            let h = core::f64::consts::FRAC_1_SQRT_2;
            C64::new(h * rng.gaussian(), h * rng.gaussian())
        }
        k => C64::new(real_unit_variate(k, rng), 0.0),
    }
}

/// Haar-distributed orthogonal (`orthogonal = true`) or unitary matrix.
///
/// A Ginibre matrix is factored by Householder QR and column `j` of `Q`
/// is multiplied by `r_jj / |r_jj|`, so that `Q` is the unique unitary
/// factor with a positive diagonal in `R`. With `special`, column 0 is
/// rescaled by `conj(det Q)` to land in SO(n) / SU(n).
pub fn haar_unitary(n: usize, seed: Seed, special: bool, orthogonal: bool) -> Result<Matrix> {
    if n == 0 {
        return Err(Error::InvalidParameter("matrix size must be positive"));
    }
    let mut rng = seed.stream();
    let h = core::f64::consts::FRAC_1_SQRT_2;
    let g = Matrix::from_fn(n, n, |_, _| {
        if orthogonal {
            C64::new(rng.gaussian(), 0.0)
        } else {
            C64::new(h * rng.gaussian(), h * rng.gaussian())
        }
    });
    let qr = householder_qr(&g)?;
    let mut q = qr.q;
    for (j, r) in qr.r_diag.iter().enumerate() {
        let abs = r.norm();
        let phase = if abs == 0.0 { C64::new(1.0, 0.0) } else { r / abs };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    if orthogonal {
        // exact zeros in the imaginary parts
        for z in q.as_mut_slice() {
            z.im = 0.0;
        }
    }
    if special {
        let det = determinant(&q)?;
        let fix = if orthogonal {
            C64::new(if det.re < 0.0 { -1.0 } else { 1.0 }, 0.0)
        } else {
            det.conj() / det.norm()
        };
        for i in 0..n {
            q[(i, 0)] *= fix;
        }
    }
    Ok(q)
}

/// Radius of the Hilbert–Schmidt sphere: `√(n(n+1)/2)` (real), `n` (complex).
pub fn hs_sphere_radius(n: usize, real_case: bool) -> f64 {
    let n = n as f64;
    if real_case {
        math::sqrt(n * (n + 1.0) / 2.0)
    } else {
        n
    }
}

/// Uniform point on the Hilbert–Schmidt sphere of Hermitian matrices.
///
/// The direction is a standard Gaussian vector in the real inner-product
/// space of (real symmetric or complex) Hermitian matrices: diagonal
/// entries `N(0,1)`, off-diagonal real and imaginary parts `N(0, 1/2)`.
pub fn hs_sphere_sample(n: usize, real_case: bool, seed: Seed) -> HermitianMatrix {
    let mut rng = seed.stream();
    let h = core::f64::consts::FRAC_1_SQRT_2;
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let z = if i == j {
                C64::new(rng.gaussian(), 0.0)
            } else if real_case {
                C64::new(h * rng.gaussian(), 0.0)
            } else {
                C64::new(h * rng.gaussian(), h * rng.gaussian())
            };
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    let norm = m.frobenius_norm();
    let m = m.scale_real(hs_sphere_radius(n, real_case) / norm);
    HermitianMatrix::new(m).expect("symmetric by construction")
}
