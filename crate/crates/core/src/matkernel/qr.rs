use alloc::vec::Vec;

use super::Matrix;
use crate::{math, Result, C64};

/// `A = Q R` with `Q` unitary; only the diagonal of `R` is kept.
#[derive(Clone, Debug)]
pub struct QrFactors {
    pub q: Matrix,
    pub r_diag: Vec<C64>,
}

/// Householder QR of a square complex matrix.
pub fn householder_qr(a: &Matrix) -> Result<QrFactors> {
    let n = a.require_square()?;
    let zero = C64::new(0.0, 0.0);
    let mut r = a.clone();
    let mut reflectors: Vec<Vec<C64>> = Vec::with_capacity(n);
    let mut r_diag = Vec::with_capacity(n);
    for k in 0..n {
        let norm = math::sqrt((k..n).map(|i| r[(i, k)].norm_sqr()).sum());
        let x0 = r[(k, k)];
        let x0_abs = x0.norm();
        let ph = if x0_abs == 0.0 { C64::new(1.0, 0.0) } else { x0 / x0_abs };
        let alpha = -ph * norm;
        let mut v: Vec<C64> = (k..n).map(|i| r[(i, k)]).collect();
        v[0] -= alpha;
        let vnorm = math::sqrt(v.iter().map(|z| z.norm_sqr()).sum());
        if vnorm == 0.0 || norm == 0.0 {
            reflectors.push(Vec::new());
            r_diag.push(x0);
            continue;
        }
        for z in v.iter_mut() {
            *z /= vnorm;
        }
        // R[k.., k..] ← (I − 2 v v*) R[k.., k..]
        for j in k..n {
            let mut dot = zero;
            for (idx, i) in (k..n).enumerate() {
                dot += v[idx].conj() * r[(i, j)];
            }
            for (idx, i) in (k..n).enumerate() {
                r[(i, j)] -= v[idx] * dot * 2.0;
            }
        }
        r_diag.push(r[(k, k)]);
        reflectors.push(v);
    }
    // Q = H_0 H_1 ⋯ H_{n−1}, applied to the identity from the right end.
    let mut q = Matrix::identity(n);
    for k in (0..n).rev() {
        let v = &reflectors[k];
        if v.is_empty() {
            continue;
        }
        for j in 0..n {
            let mut dot = zero;
            for (idx, i) in (k..n).enumerate() {
                dot += v[idx].conj() * q[(i, j)];
            }
            for (idx, i) in (k..n).enumerate() {
                q[(i, j)] -= v[idx] * dot * 2.0;
            }
        }
    }
    Ok(QrFactors { q, r_diag })
}

/// Determinant by LU with partial pivoting.
pub fn determinant(a: &Matrix) -> Result<C64> {
    let n = a.require_square()?;
    let mut w = a.clone();
    let mut det = C64::new(1.0, 0.0);
    for k in 0..n {
        let pivot = (k..n)
            .max_by(|&i, &j| w[(i, k)].norm().total_cmp(&w[(j, k)].norm()))
            .unwrap_or(k);
        if w[(pivot, k)].norm() == 0.0 {
            return Ok(C64::new(0.0, 0.0));
        }
        if pivot != k {
            for j in 0..n {
                let tmp = w[(k, j)];
                w[(k, j)] = w[(pivot, j)];
                w[(pivot, j)] = tmp;
            }
            det = -det;
        }
        let piv = w[(k, k)];
        det *= piv;
        for i in k + 1..n {
            let f = w[(i, k)] / piv;
            for j in k..n {
                let t = w[(k, j)];
                w[(i, j)] -= f * t;
            }
        }
    }
    Ok(det)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qr_reconstructs_and_is_unitary() {
        let a = Matrix::from_fn(4, 4, |i, j| C64::new((i * 3 + j) as f64 % 5.0 - 2.0, (i as f64 - j as f64) * 0.3));
        let QrFactors { q, r_diag } = householder_qr(&a).unwrap();
        let qhq = &q.adjoint() * &q;
        assert!(qhq.max_entry_distance(&Matrix::identity(4)).unwrap() < 1e-13);
        // R = Q* A is upper triangular with the recorded diagonal
        let r = &q.adjoint() * &a;
        for i in 0..4 {
            assert!((r[(i, i)] - r_diag[i]).norm() < 1e-12);
            for j in 0..i {
                assert!(r[(i, j)].norm() < 1e-12);
            }
        }
    }

    #[test]
    fn determinant_small() {
        let a = Matrix::from_real_rows(&[&[0.0, 2.0], &[3.0, 1.0]]);
        assert!((determinant(&a).unwrap() - C64::new(-6.0, 0.0)).norm() < 1e-14);
        assert_eq!(determinant(&Matrix::zeros(3, 3)).unwrap(), C64::new(0.0, 0.0));
    }
}
