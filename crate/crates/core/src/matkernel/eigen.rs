use alloc::vec::Vec;

use super::{HermitianMatrix, Matrix};
use crate::{math, Error, Result, C64};

/// Stopping rule for the Jacobi sweeps.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralTolerance {
    eps: f64,
    max_sweeps: usize,
}

impl SpectralTolerance {
    pub fn new(eps: f64, max_sweeps: usize) -> Result<Self> {
        if !(eps > 0.0) || !eps.is_finite() {
            return Err(Error::InvalidParameter("spectral eps must be positive"));
        }
        if max_sweeps == 0 {
            return Err(Error::InvalidParameter("max_sweeps must be at least 1"));
        }
        Ok(Self { eps, max_sweeps })
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn max_sweeps(&self) -> usize {
        self.max_sweeps
    }
}

impl Default for SpectralTolerance {
    fn default() -> Self {
        Self {
            eps: 1e-12,
            max_sweeps: 64,
        }
    }
}

fn off_diagonal_mass(a: &[C64], n: usize) -> f64 {
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[i * n + j].norm_sqr();
            }
        }
    }
    math::sqrt(acc)
}

/// Eigenvalues of a Hermitian matrix, nonincreasing, by cyclic Jacobi.
///
/// Each rotation first removes the phase of `a_pq` with a diagonal unitary
/// and then applies the real symmetric Jacobi rotation, so the 2x2 pivot
/// block is diagonalized exactly. Sweeps stop once the off-diagonal
/// Frobenius mass drops below `eps · ‖A‖₂`.
pub fn herm_eigvals(a: &HermitianMatrix, tol: SpectralTolerance) -> Result<Vec<f64>> {
    let n = a.n();
    let mut w: Vec<C64> = a.as_slice().to_vec();
    let scale = a.frobenius_norm();
    if scale == 0.0 {
        return Ok(alloc::vec![0.0; n]);
    }
    let target = tol.eps * scale;
    let mut sweeps = 0;
    loop {
        let off = off_diagonal_mass(&w, n);
        if off <= target {
            break;
        }
        if sweeps == tol.max_sweeps {
            return Err(Error::NoConvergence {
                sweeps,
                off_diagonal: off,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut w, n, p, q);
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| w[i * n + i].re).collect();
    eig.sort_by(|x, y| y.total_cmp(x));
    Ok(eig)
}

fn rotate(w: &mut [C64], n: usize, p: usize, q: usize) {
    let apq = w[p * n + q];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let app = w[p * n + p].re;
    let aqq = w[q * n + q].re;
    let phase = apq / r; // e^{iφ}
    let theta = (aqq - app) / (2.0 * r);
    let t = {
        let t = 1.0 / (theta.abs() + math::hypot(theta, 1.0));
        if theta < 0.0 {
            -t
        } else {
            t
        }
    };
    let c = 1.0 / math::hypot(t, 1.0);
    let s = t * c;
    // U = diag(1, e^{-iφ}) · [[c, s], [-s, c]] restricted to (p, q).
    let u_pp = C64::new(c, 0.0);
    let u_pq = C64::new(s, 0.0);
    let u_qp = -phase.conj() * s;
    let u_qq = phase.conj() * c;

    // A ← A U (columns p, q)
    for k in 0..n {
        let akp = w[k * n + p];
        let akq = w[k * n + q];
        w[k * n + p] = akp * u_pp + akq * u_qp;
        w[k * n + q] = akp * u_pq + akq * u_qq;
    }
    // A ← U* A (rows p, q)
    for k in 0..n {
        let apk = w[p * n + k];
        let aqk = w[q * n + k];
        w[p * n + k] = u_pp.conj() * apk + u_qp.conj() * aqk;
        w[q * n + k] = u_pq.conj() * apk + u_qq.conj() * aqk;
    }
    w[p * n + p] = C64::new(app - t * r, 0.0);
    w[q * n + q] = C64::new(aqq + t * r, 0.0);
    w[p * n + q] = C64::new(0.0, 0.0);
    w[q * n + p] = C64::new(0.0, 0.0);
}

/// Reduces a Hermitian matrix to real symmetric tridiagonal form by
/// Householder reflections. Returns `(diagonal, |off-diagonal|)`.
fn tridiagonalize(a: &Matrix) -> (Vec<f64>, Vec<f64>) {
    let n = a.rows();
    let mut w: Vec<C64> = a.as_slice().to_vec();
    let zero = C64::new(0.0, 0.0);
    let mut v = alloc::vec![zero; n];
    let mut p = alloc::vec![zero; n];
    for k in 0..n.saturating_sub(2) {
        // x = w[k+1.., k]
        let mut norm_sq = 0.0;
        for i in k + 1..n {
            norm_sq += w[i * n + k].norm_sqr();
        }
        let norm = math::sqrt(norm_sq);
        let x0 = w[(k + 1) * n + k];
        let tail = norm_sq - x0.norm_sqr();
        if tail <= 0.0 {
            continue;
        }
        let x0_abs = x0.norm();
        let ph = if x0_abs == 0.0 { C64::new(1.0, 0.0) } else { x0 / x0_abs };
        let alpha = -ph * norm;
        for i in 0..n {
            v[i] = if i <= k { zero } else { w[i * n + k] };
        }
        v[k + 1] -= alpha;
        let vnorm = math::sqrt(v[k + 1..].iter().map(|z| z.norm_sqr()).sum());
        if vnorm == 0.0 {
            continue;
        }
        for z in v[k + 1..].iter_mut() {
            *z /= vnorm;
        }
        // p = W v restricted to the active block (rows/cols ≥ k)
        for i in k..n {
            let mut acc = zero;
            for j in k + 1..n {
                acc += w[i * n + j] * v[j];
            }
            p[i] = acc;
        }
        let kk: C64 = (k + 1..n).map(|j| v[j].conj() * p[j]).sum();
        // w_vec = p − K v ; W ← W − 2(v w* + w v*)
        for i in k..n {
            p[i] -= kk * v[i];
        }
        for i in k..n {
            for j in k..n {
                let upd = v[i] * p[j].conj() + p[i] * v[j].conj();
                w[i * n + j] -= upd * 2.0;
            }
        }
    }
    let diag = (0..n).map(|i| w[i * n + i].re).collect();
    let off = (0..n.saturating_sub(1)).map(|i| w[(i + 1) * n + i].norm()).collect();
    (diag, off)
}

/// Number of eigenvalues of the tridiagonal matrix strictly below `x`.
fn sturm_count(diag: &[f64], off: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for i in 0..diag.len() {
        let e2 = if i == 0 { 0.0 } else { off[i - 1] * off[i - 1] };
        q = diag[i] - x - if i == 0 { 0.0 } else { e2 / q };
        if q == 0.0 {
            q = -f64::EPSILON * (x.abs() + 1.0);
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

fn gershgorin(diag: &[f64], off: &[f64]) -> (f64, f64) {
    let n = diag.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let r = if i > 0 { off[i - 1] } else { 0.0 } + if i + 1 < n { off[i] } else { 0.0 };
        lo = lo.min(diag[i] - r);
        hi = hi.max(diag[i] + r);
    }
    let pad = 1e-12 * (lo.abs().max(hi.abs()) + 1.0);
    (lo - pad, hi + pad)
}

/// The `k`-th smallest eigenvalue (0-based) by Sturm bisection.
fn kth_eigenvalue(diag: &[f64], off: &[f64], k: usize, lo: f64, hi: f64) -> f64 {
    let (mut lo, mut hi) = (lo, hi);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if sturm_count(diag, off, mid) > k {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Eigenvalues, nonincreasing, via Householder tridiagonalization and
/// Sturm bisection. `O(n³)` with a small constant; used for large `n`
/// where Jacobi sweeps get slow.
pub fn herm_eigvals_tridiagonal(a: &HermitianMatrix) -> Vec<f64> {
    let (diag, off) = tridiagonalize(a);
    let (lo, hi) = gershgorin(&diag, &off);
    let n = diag.len();
    (0..n).rev().map(|k| kth_eigenvalue(&diag, &off, k, lo, hi)).collect()
}

/// Operator norm `max |λ_i|` of a Hermitian matrix.
pub fn hermitian_spectral_norm(a: &HermitianMatrix) -> f64 {
    let (diag, off) = tridiagonalize(a);
    let (lo, hi) = gershgorin(&diag, &off);
    let n = diag.len();
    let smallest = kth_eigenvalue(&diag, &off, 0, lo, hi);
    let largest = kth_eigenvalue(&diag, &off, n - 1, lo, hi);
    smallest.abs().max(largest.abs())
}
