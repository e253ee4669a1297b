//! Kernel numerics against oracles that share no code with the kernel.

use nctrace_core::matkernel::{
    herm_eigvals, herm_eigvals_tridiagonal, hermitian_spectral_norm, power_trace, schatten_norm,
};
use nctrace_core::rng::Seed;
use nctrace_core::{HermitianMatrix, Matrix, SchattenIndex, SpectralTolerance, C64};
use proptest::prelude::*;

fn random_matrix(n: usize, seed: u64) -> Matrix {
    let mut r = Seed(seed).stream();
    Matrix::from_fn(n, n, |_, _| C64::new(r.gaussian(), r.gaussian()))
}

fn random_hermitian(n: usize, seed: u64) -> HermitianMatrix {
    HermitianMatrix::hermitian_part(&random_matrix(n, seed)).unwrap()
}

/// Number of eigenvalues of `a` below `x`: by Sylvester's law of inertia
/// it equals the number of negative ratios of consecutive leading
/// principal minors of `a − xI`, i.e. negative pivots of unpivoted
/// Gaussian elimination.
fn count_below(a: &Matrix, x: f64) -> usize {
    let n = a.rows();
    let mut w: Vec<Vec<C64>> = (0..n)
        .map(|i| (0..n).map(|j| a[(i, j)] - if i == j { C64::new(x, 0.0) } else { C64::new(0.0, 0.0) }).collect())
        .collect();
    let mut negatives = 0;
    for k in 0..n {
        let mut piv = w[k][k].re;
        if piv == 0.0 {
            piv = -1e-300;
        }
        if piv < 0.0 {
            negatives += 1;
        }
        for i in k + 1..n {
            let f = w[i][k] / piv;
            for j in k..n {
                let t = w[k][j];
                w[i][j] -= f * t;
            }
        }
    }
    negatives
}

/// Eigenvalues by bisection on the sign pattern of the characteristic
/// polynomial's principal minors, nonincreasing.
fn bisection_eigenvalues(a: &Matrix) -> Vec<f64> {
    let n = a.rows();
    let bound = a.frobenius_norm() + 1.0;
    let mut out: Vec<f64> = (0..n)
        .map(|k| {
            let (mut lo, mut hi) = (-bound, bound);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if count_below(a, mid) > k {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            0.5 * (lo + hi)
        })
        .collect();
    out.reverse();
    out
}

#[test]
fn eigenvalues_match_bisection_oracle() {
    for seed in 0..20 {
        let a = random_hermitian(5, seed);
        let jac = herm_eigvals(&a, SpectralTolerance::default()).unwrap();
        let oracle = bisection_eigenvalues(&a);
        for (x, y) in jac.iter().zip(&oracle) {
            assert!((x - y).abs() < 1e-8, "seed {seed}: {jac:?} vs {oracle:?}");
        }
        let tri = herm_eigvals_tridiagonal(&a);
        for (x, y) in tri.iter().zip(&oracle) {
            assert!((x - y).abs() < 1e-8, "seed {seed}: {tri:?} vs {oracle:?}");
        }
    }
}

#[test]
fn eigenvalue_postconditions() {
    for (n, seed) in [(1, 1), (4, 2), (12, 3), (33, 4)] {
        let a = random_hermitian(n, seed);
        let e = herm_eigvals(&a, SpectralTolerance::default()).unwrap();
        assert_eq!(e.len(), n);
        assert!(e.windows(2).all(|w| w[0] >= w[1]));
        let tr = a.trace().unwrap().re;
        let opnorm = e[0].abs().max(e[n - 1].abs());
        assert!((e.iter().sum::<f64>() - tr).abs() <= n as f64 * 1e-10 * opnorm.max(1.0));
        let fro2 = a.frobenius_norm().powi(2);
        assert!((e.iter().map(|l| l * l).sum::<f64>() / fro2 - 1.0).abs() < 1e-9);
        assert!((hermitian_spectral_norm(&a) - opnorm).abs() < 1e-9 * opnorm);
    }
}

#[test]
fn power_trace_matches_spectrum() {
    let a = random_hermitian(6, 77);
    let e = herm_eigvals(&a, SpectralTolerance::default()).unwrap();
    let want: f64 = e.iter().map(|l| l.powi(3)).sum();
    let got = power_trace(&a, 3).unwrap();
    assert!((got.re - want).abs() < 1e-8 * want.abs().max(1.0));
    assert!(got.im.abs() < 1e-10 * want.abs().max(1.0));
}

#[test]
fn schatten_two_is_frobenius() {
    for seed in 0..10 {
        let a = random_matrix(5, seed + 100);
        let s2 = schatten_norm(&a, SchattenIndex::Finite(2.0)).unwrap();
        assert!((s2 / a.frobenius_norm() - 1.0).abs() < 1e-10);
    }
}

#[test]
fn hoelder_four_example() {
    let a = random_matrix(4, 4242);
    let s4 = schatten_norm(&a, SchattenIndex::Finite(4.0)).unwrap();
    let s2 = schatten_norm(&a, SchattenIndex::Finite(2.0)).unwrap();
    let sinf = schatten_norm(&a, SchattenIndex::Infinity).unwrap();
    assert!(s4 <= (s2 * sinf).sqrt() * (1.0 + 1e-12));
}

#[test]
fn schatten_properties_on_random_matrices() {
    let ps = [1.0, 1.5, 2.0, 3.0, 4.0, 6.0, 10.0];
    for seed in 0..100 {
        let n = 2 + (seed % 5) as usize;
        let a = random_matrix(n, 1000 + seed);
        let norms: Vec<f64> = ps
            .iter()
            .map(|&p| schatten_norm(&a, SchattenIndex::Finite(p)).unwrap())
            .collect();
        let inf = schatten_norm(&a, SchattenIndex::Infinity).unwrap();
        for w in norms.windows(2) {
            assert!(w[1] <= w[0] * (1.0 + 1e-12));
        }
        assert!(inf <= norms[norms.len() - 1] * (1.0 + 1e-12));
        let two = norms[2];
        for (&p, &v) in ps.iter().zip(&norms).filter(|(p, _)| **p >= 2.0) {
            let bound = two.powf(2.0 / p) * inf.powf(1.0 - 2.0 / p);
            assert!(v <= bound * (1.0 + 1e-12), "p={p}: {v} > {bound}");
        }
    }
}

#[test]
fn trace_cyclicity() {
    let (a, b, c) = (random_matrix(5, 1), random_matrix(5, 2), random_matrix(5, 3));
    let abc = (&(&a * &b) * &c).trace().unwrap();
    let bca = (&(&b * &c) * &a).trace().unwrap();
    let cab = (&(&c * &a) * &b).trace().unwrap();
    assert!((abc - bca).norm() < 1e-10 * abc.norm());
    assert!((abc - cab).norm() < 1e-10 * abc.norm());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // Sorted spectra are 1-Lipschitz in the Hilbert–Schmidt norm.
    #[test]
    fn hoffman_wielandt(seed in 0u64..1_000_000, n in 1usize..8, scale in 0.01f64..3.0) {
        let a = random_hermitian(n, seed);
        let b = a.combine(1.0, &random_hermitian(n, seed ^ 0xABCD), scale).unwrap();
        let ea = herm_eigvals(&a, SpectralTolerance::default()).unwrap();
        let eb = herm_eigvals(&b, SpectralTolerance::default()).unwrap();
        let dist: f64 = ea.iter().zip(&eb).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt();
        let hs = a.combine(1.0, &b, -1.0).unwrap().frobenius_norm();
        prop_assert!(dist <= hs * (1.0 + 1e-10) + 1e-12);
    }

    #[test]
    fn power_trace_cyclic_in_products(seed in 0u64..1_000_000, d in 1u32..6) {
        let a = random_matrix(4, seed);
        let b = random_matrix(4, seed + 1);
        let ab = (&a * &b).pow(d).unwrap().trace().unwrap();
        let ba = (&b * &a).pow(d).unwrap().trace().unwrap();
        prop_assert!((ab - ba).norm() <= 1e-9 * ab.norm().max(1.0));
        prop_assert!((power_trace(&(&a * &b), d).unwrap() - ab).norm() <= 1e-9 * ab.norm().max(1.0));
    }
}
