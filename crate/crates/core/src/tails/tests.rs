use super::*;
use crate::rng::Seed;
use alloc::vec;
use proptest::prelude::*;
use statrs::distribution::{ContinuousCDF, Normal};

fn real(xs: &[f64]) -> Vec<C64> {
    xs.iter().map(|&x| C64::new(x, 0.0)).collect()
}

fn gaussian_samples(n: usize, sigma: f64, seed: u64) -> Vec<C64> {
    let mut r = Seed(seed).stream();
    (0..n).map(|_| C64::new(sigma * r.gaussian(), 0.0)).collect()
}

#[test]
fn constant_samples_have_no_tail() {
    let s = real(&[3.0; 10]);
    let t = tail_estimate(&s, &[0.0, 0.5, 1.0]).unwrap();
    assert_eq!(t.survival, vec![1.0, 0.0, 0.0]);
}

#[test]
fn two_point_tail() {
    let t = tail_estimate(&real(&[0.0, 2.0]), &[1.0]).unwrap();
    assert_eq!(t.survival, vec![1.0]);
    assert_eq!(t.counts, vec![2]);
}

#[test]
fn tail_input_validation() {
    let s = real(&[0.0, 1.0]);
    assert!(tail_estimate(&s, &[]).is_err());
    assert!(tail_estimate(&[], &[1.0]).is_err());
    assert!(tail_estimate(&s, &[1.0, 0.5]).is_err());
    assert!(tail_estimate(&s, &[-1.0]).is_err());
}

#[test]
fn gaussian_two_sigma_tail() {
    let sigma = 1.3;
    let s = gaussian_samples(10_000, sigma, 17);
    let t = tail_estimate(&s, &[2.0 * sigma]).unwrap();
    assert!((t.survival[0] - 0.0455).abs() < 0.02, "{}", t.survival[0]);
}

#[test]
fn bound_examples() {
    assert_eq!(theoretical_bound(0.0, 10, 3, 2.5, 0.7), 2.5);
    for t in [0.1, 1.0, 3.0] {
        let v = theoretical_bound(t, 7, 1, 2.0, 0.5);
        assert!((v - 2.0 * (-0.5 * t * t).exp()).abs() < 1e-15);
    }
    // branches meet at t = n^{d/(2(d−1))}
    for (n, d) in [(16usize, 2u32), (64, 3), (100, 4)] {
        let t = (n as f64).powf(d as f64 / (2.0 * (d as f64 - 1.0)));
        let heavy = n as f64 * t.powf(2.0 / d as f64);
        assert!((t * t - heavy).abs() < 1e-9 * heavy);
        assert!((bound_exponent(t * 0.9, n, d) - (0.9 * t).powi(2)).abs() < 1e-9 * heavy);
        assert!(bound_exponent(t * 1.1, n, d) < (1.1 * t).powi(2));
    }
}

#[test]
fn fit_round_trip() {
    for (n, d) in [(1usize, 1u32), (32, 2), (64, 4)] {
        let grid: Vec<f64> = (0..40).map(|i| 0.1 * i as f64).collect();
        let survival: Vec<f64> = grid.iter().map(|&t| theoretical_bound(t, n, d, 2.0, 0.5)).collect();
        let tail = TailEstimate {
            counts: vec![0; grid.len()],
            grid,
            survival,
            replicas: 1,
        };
        let fit = fit_tail_constants(&tail, n, d).unwrap();
        assert!((fit.c_hat_big / 2.0 - 1.0).abs() < 0.05);
        assert!((fit.c_hat / 0.5 - 1.0).abs() < 0.05);
        assert!(fit.residual < 1e-9);
    }
}

#[test]
fn fit_needs_positive_bins() {
    let s = real(&[0.0, 0.0, 0.0, 0.0]);
    let tail = tail_estimate(&s, &[0.0, 1.0, 2.0, 3.0]).unwrap();
    assert!(matches!(
        fit_tail_constants(&tail, 1, 1),
        Err(Error::InsufficientTailData { positive_bins: 1 })
    ));
}

#[test]
fn gaussian_rate_from_stratified_quantiles() {
    // Exact normal quantiles; the fit grid covers the tail region [2σ̂, max].
    let sigma = 1.7;
    let n = 10_000;
    let normal = Normal::new(0.0, sigma).unwrap();
    let s: Vec<C64> = (0..n)
        .map(|i| C64::new(normal.inverse_cdf((i as f64 + 0.5) / n as f64), 0.0))
        .collect();
    let sd = std_dev(&s).unwrap();
    let top = deviations(&s).unwrap().into_iter().fold(0.0, f64::max);
    let grid: Vec<f64> = (0..40).map(|i| 2.0 * sd + (top - 2.0 * sd) * i as f64 / 39.0).collect();
    let fit = fit_tail_constants(&tail_estimate(&s, &grid).unwrap(), 1, 1).unwrap();
    let target = 1.0 / (2.0 * sigma * sigma);
    assert!((fit.c_hat / target - 1.0).abs() < 0.15, "c_hat {} vs {target}", fit.c_hat);
}

#[test]
fn lq_examples() {
    let s = real(&[-1.0, 1.0]);
    assert_eq!(lq_norms(&s, &[1.0, 2.0, 5.0]).unwrap(), vec![1.0, 1.0, 1.0]);
    let s = real(&[1.0, 2.0, 4.0, 9.0]);
    let m = 4.0;
    let sd = (s.iter().map(|z| (z.re - m).powi(2)).sum::<f64>() / 4.0).sqrt();
    assert!((lq_norms(&s, &[2.0]).unwrap()[0] - sd).abs() < 1e-14);
    assert!((std_dev(&s).unwrap() - sd).abs() < 1e-14);
    assert!(lq_norms(&s, &[0.5]).is_err());
    assert!(lq_norms(&s, &[]).is_err());
}

#[test]
fn gaussian_moment_ratio() {
    let s = gaussian_samples(10_000, 2.0, 23);
    let l = lq_norms(&s, &[2.0, 4.0]).unwrap();
    let ratio = l[1] / l[0];
    assert!((ratio / 3f64.powf(0.25) - 1.0).abs() < 0.05, "ratio {ratio}");
}

#[test]
fn median_gap_examples() {
    assert_eq!(median_mean_gap(&real(&[-1.0, 0.0, 1.0])).unwrap(), 0.0);
    assert_eq!(median_mean_gap(&real(&[0.0, 0.0, 3.0])).unwrap(), 1.0);
    assert_eq!(lower_median(&[4.0, 1.0, 3.0, 2.0]).unwrap(), 2.0);
    let m = median(&[C64::new(1.0, 5.0), C64::new(3.0, -1.0), C64::new(2.0, 0.0)]).unwrap();
    assert_eq!(m, C64::new(2.0, 0.0));
}

#[test]
fn default_grid_shape() {
    let s = gaussian_samples(1000, 1.0, 5);
    let g = default_grid(&s, 40).unwrap();
    assert_eq!(g.len(), 40);
    assert!(g.windows(2).all(|w| w[1] > w[0]));
    let sd = std_dev(&s).unwrap();
    assert!((g[0] - 0.05 * sd).abs() < 1e-12);
    assert_eq!(g[39], deviations(&s).unwrap().into_iter().fold(0.0, f64::max));
    assert!(default_grid(&real(&[1.0, 1.0]), 40).is_err());
}

proptest! {
    #[test]
    fn survival_is_monotone(xs in proptest::collection::vec(-50.0f64..50.0, 1..60), steps in 1usize..30) {
        let s = real(&xs);
        let grid: Vec<f64> = (0..steps).map(|i| i as f64 * 2.0).collect();
        let t = tail_estimate(&s, &grid).unwrap();
        prop_assert_eq!(t.survival[0], 1.0);
        prop_assert!(t.survival.windows(2).all(|w| w[1] <= w[0]));
        prop_assert!(t.survival.iter().all(|&v| (0.0..=1.0).contains(&v)));
    }

    #[test]
    fn lq_is_monotone_in_q(xs in proptest::collection::vec(-10.0f64..10.0, 1..40)) {
        let s = real(&xs);
        let qs = [1.0, 1.5, 2.0, 3.0, 4.0, 8.0];
        let l = lq_norms(&s, &qs).unwrap();
        prop_assert!(l.windows(2).all(|w| w[1] >= w[0] * (1.0 - 1e-12)));
    }
}
