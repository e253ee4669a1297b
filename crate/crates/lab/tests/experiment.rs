use nctrace_core::ensembles::{EnsembleKind, EnsembleSpec};
use nctrace_core::rng::Seed;
use nctrace_lab::experiment::replica_matrices;
use nctrace_lab::{convergence_study, io, run_experiment, ExperimentConfig, LabError};

fn cfg(poly: &str, m: usize, n: usize, kind: EnsembleKind, replicas: usize) -> ExperimentConfig {
    ExperimentConfig::new(poly, m, n, kind.into(), replicas, 31337)
}

#[test]
fn identical_configs_give_identical_results() {
    let c = cfg("x1*x2 + x2^3", 2, 12, EnsembleKind::WignerRademacher, 30);
    assert_eq!(run_experiment(&c).unwrap(), run_experiment(&c).unwrap());
}

#[test]
fn thread_count_does_not_change_results() {
    let c = cfg("x1^3*x2", 2, 10, EnsembleKind::WignerGaussianComplex, 50);
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
    let a = one.install(|| run_experiment(&c)).unwrap();
    let b = four.install(|| run_experiment(&c)).unwrap();
    assert_eq!(a.samples, b.samples);
}

#[test]
fn replica_seeds_follow_derivation() {
    let c = cfg("x1*x2", 2, 6, EnsembleKind::WignerGaussianReal, 3);
    let res = run_experiment(&c).unwrap();
    for i in 0..3 {
        assert_eq!(res.replica_seed(i), Seed(31337).derive(i as u64));
        let xs = replica_matrices(&c, i).unwrap();
        let direct = nctrace_core::ensembles::sample(c.ensemble_for(1), 6, Seed(31337).derive(i as u64).derive(1))
            .unwrap()
            .scale_real(1.0 / 6f64.sqrt());
        assert_eq!(xs[1], direct);
        let z = c.polynomial().unwrap().trace_evaluate(&xs).unwrap();
        assert_eq!(res.samples[i], z);
    }
}

#[test]
fn mean_is_recomputable() {
    let res = run_experiment(&cfg("x1^2 - x1", 1, 8, EnsembleKind::HsSphereComplex, 64)).unwrap();
    assert_eq!(res.samples.len(), 64);
    let mean = res.samples.iter().sum::<nctrace_core::C64>() / 64.0;
    assert!((mean - res.mean).norm() < 1e-12);
}

#[test]
fn complex_wigner_second_moment_is_n() {
    // E tr (X/√n)² = n⁻¹ Σ_ij E|X_ij|² = n with unit variances
    let res = run_experiment(&cfg("x1^2", 1, 64, EnsembleKind::WignerGaussianComplex, 400)).unwrap();
    let re: Vec<f64> = res.samples.iter().map(|z| z.re).collect();
    let sd = (re.iter().map(|x| (x - res.mean.re).powi(2)).sum::<f64>() / 399.0).sqrt();
    assert!((res.mean.re - 64.0).abs() < 3.0 * sd / 20.0, "mean {} sd {sd}", res.mean.re);
}

#[test]
fn selfadjoint_polynomial_has_real_trace() {
    let c = cfg("x1*x2*x1 + 2*x2^3 - x1^2", 2, 16, EnsembleKind::WignerGaussianComplex, 40);
    let res = run_experiment(&c).unwrap();
    assert!(res.samples.iter().all(|z| z.im.abs() < 1e-9));
}

#[test]
fn median_gap_is_small_for_gue() {
    let res = run_experiment(&cfg("x1^2", 1, 128, EnsembleKind::WignerGaussianComplex, 1000)).unwrap();
    let re: Vec<f64> = res.samples.iter().map(|z| z.re).collect();
    let sd = (re.iter().map(|x| (x - res.mean.re).powi(2)).sum::<f64>() / 999.0).sqrt();
    let gap = res.median_mean_gap().unwrap();
    assert!(gap <= 3.0 * sd / 1000f64.sqrt(), "gap {gap} sd {sd}");
}

#[test]
fn tails_and_norms_of_results() {
    let res = run_experiment(&cfg("x1", 1, 8, EnsembleKind::WignerGaussianReal, 500)).unwrap();
    let tail = res.tail_estimate(&[0.0, 0.5, 1.0, 2.0]).unwrap();
    assert_eq!(tail.survival[0], 1.0);
    assert!(tail.survival.windows(2).all(|w| w[1] <= w[0]));
    let q = res.lq_norms(&[1.0, 2.0, 4.0]).unwrap();
    assert!(q[0] <= q[1] && q[1] <= q[2]);
    let (_, fit) = res.fit_tail().unwrap();
    assert!(fit.c_hat > 0.0 && fit.c_hat_big > 0.0);
    assert_eq!((fit.n, fit.d), (8, 1));
}

#[test]
fn per_variable_ensembles() {
    let mut c = cfg("x1*x2", 2, 4, EnsembleKind::WignerGaussianReal, 5);
    c.ensembles = vec![
        EnsembleKind::WignerGaussianReal.into(),
        EnsembleSpec::new(EnsembleKind::HaarUnitaryScaled),
    ];
    let xs = replica_matrices(&c, 0).unwrap();
    let u = &xs[1];
    let uu = &u.adjoint() * u;
    assert!(uu.max_entry_distance(&nctrace_core::Matrix::identity(4)).unwrap() < 1e-12);
    c.ensembles.push(EnsembleKind::WignerRademacher.into());
    assert!(matches!(run_experiment(&c), Err(LabError::Config(_))));
}

#[test]
fn validation_and_budget() {
    assert!(matches!(run_experiment(&cfg("x3", 2, 4, EnsembleKind::WignerRademacher, 1)), Err(LabError::Core(_))));
    assert!(run_experiment(&cfg("x1", 1, 4, EnsembleKind::WignerRademacher, 0)).is_err());
    let mut big = cfg("x1^4", 1, 10_000, EnsembleKind::WignerRademacher, 1000);
    assert!(matches!(run_experiment(&big), Err(LabError::Budget { .. })));
    big.force = true;
    assert_eq!(big.operation_estimate(4), 4e15);
}

#[test]
fn convergence_table_for_wigner() {
    let c = cfg("x1^2", 1, 16, EnsembleKind::WignerGaussianReal, 200);
    let t = convergence_study(&c, &[16, 32]).unwrap();
    assert!(t.limit_applicable && t.warning.is_none());
    assert_eq!(t.rows.len(), 2);
    for r in &t.rows {
        assert_eq!(r.limit, nctrace_core::C64::new(1.0, 0.0));
        assert!(r.stderr > 0.0 && r.deviation < 0.1);
    }
}

#[test]
fn convergence_flags_non_wigner() {
    let c = cfg("x1^2", 1, 8, EnsembleKind::HaarUnitaryScaled, 20);
    let t = convergence_study(&c, &[8]).unwrap();
    assert!(!t.limit_applicable);
    assert!(t.warning.is_some());
    assert_eq!(t.rows.len(), 1);
}

#[test]
fn results_csv_round_trip_is_lossless() {
    let res = run_experiment(&cfg("x1^3 + 0.3*x1*x2'", 2, 5, EnsembleKind::HaarUnitaryScaled, 25)).unwrap();
    let recs = io::records(&res);
    let text = io::results_csv(&recs);
    assert_eq!(text.lines().count(), 26);
    assert!(text.starts_with("replica,n,seed,re_z,im_z\n"));
    let back = io::parse_results_csv(&text, "mem").unwrap();
    assert_eq!(back, recs);
    for (a, b) in back.iter().zip(&res.samples) {
        assert_eq!(a.z.re.to_bits(), b.re.to_bits());
        assert_eq!(a.z.im.to_bits(), b.im.to_bits());
    }
}
