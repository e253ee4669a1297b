use std::fs;
use std::process::Command;

use nctrace_lab::cli::dispatch_to;
use nctrace_lab::io;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("nctrace").chain(args.iter().copied());
    let code = dispatch_to(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn freelimit_prints_moment() {
    assert_eq!(run(&["freelimit", "--poly", "x1^4", "--m", "1"]), (0, "2+0i\n".into(), String::new()));
    let (code, out, _) = run(&["freelimit", "--poly", "x1*x2*x1*x2 + (0+2i)*x2^2", "--m", "2"]);
    assert_eq!((code, out.as_str()), (0, "0+2i\n"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["frobnicate"]).0, 1);
    assert_eq!(run(&["freelimit", "--poly", "x1", "--m", "1", "--bogus"]).0, 1);
    assert_eq!(run(&[]).0, 1);
    let (code, _, err) = run(&["freelimit", "--poly", "x2", "--m", "1"]);
    assert_eq!(code, 1);
    assert!(err.contains("error"));
    assert_eq!(run(&["verify", "--suite", "nope"]).0, 1);
}

#[test]
fn version_and_help_exit_zero() {
    let (code, out, _) = run(&["--version"]);
    assert_eq!(code, 0);
    assert!(out.contains(env!("CARGO_PKG_VERSION")));
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn verify_identities_passes() {
    let (code, out, _) = run(&["verify", "--suite", "identities"]);
    assert_eq!(code, 0, "{out}");
    for name in ["polarization", "dilation", "fourier", "split", "extension"] {
        assert!(out.lines().any(|l| l.starts_with("PASS") && l.contains(name)), "{name} missing:\n{out}");
    }
}

#[test]
fn experiment_config_to_csv_and_back() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("exp.cfg");
    let csv = dir.path().join("run.csv");
    fs::write(&cfg, "poly = x1^2\nm = 1\nn = 8\nensemble = wigner_gaussian_real\nreplicas = 37\nseed = 5\n").unwrap();
    let (code, out, err) = run(&["experiment", "--config", cfg.to_str().unwrap(), "--out", csv.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("replicas=37"));
    let text = fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 38);
    let recs = io::parse_results_csv(&text, "run.csv").unwrap();
    assert_eq!(io::results_csv(&recs), text);

    // same seed, same bytes; flags override the file
    let again = dir.path().join("again.csv");
    let (code, _, _) = run(&["experiment", "--config", cfg.to_str().unwrap(), "--threads", "2", "--out", again.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(fs::read(&csv).unwrap(), fs::read(&again).unwrap());
    let other = dir.path().join("other.csv");
    run(&["experiment", "--config", cfg.to_str().unwrap(), "--seed", "6", "--out", other.to_str().unwrap()]);
    assert_ne!(fs::read(&csv).unwrap(), fs::read(&other).unwrap());

    let tail = dir.path().join("tail.csv");
    let (code, out, err) = run(&["tail", "--in", csv.to_str().unwrap(), "--d", "2", "--out", tail.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    assert!(out.starts_with("C_hat=") && out.contains(" n=8 d=2"), "{out}");
    let tail_text = fs::read_to_string(&tail).unwrap();
    assert!(tail_text.starts_with("t,survival,count\n"));
    assert_eq!(tail_text.lines().count(), 41);

    let (code, out, _) = run(&["moments", "--in", csv.to_str().unwrap(), "--q", "2,4"]);
    assert_eq!(code, 0);
    assert!(out.contains("q=2 lq=") && out.contains("q=4 lq=") && out.contains("median_mean_gap="));
}

#[test]
fn experiment_from_flags_and_budget() {
    let (code, out, _) = run(&["experiment", "--poly", "x1*x2", "--n", "4", "--replicas", "3", "--ensemble", "wigner_rademacher"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 4);
    let (code, _, err) = run(&["experiment", "--poly", "x1^4", "--n", "20000", "--replicas", "100"]);
    assert_eq!(code, 1);
    assert!(err.contains("--force"), "{err}");
}

#[test]
fn sample_writes_matrix_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.csv");
    let (code, _, _) = run(&["sample", "--ensemble", "hs_sphere_complex", "--n", "3", "--seed", "4", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let m = io::parse_matrix_csv(&fs::read_to_string(&path).unwrap(), "x.csv").unwrap();
    assert_eq!((m.rows(), m.cols()), (3, 3));
    assert!((m.frobenius_norm() - 3.0).abs() < 1e-12);
    assert_eq!(run(&["sample", "--ensemble", "gaussian", "--n", "3"]).0, 1);
}

#[test]
fn converge_reports_table() {
    let (code, out, _) = run(&["converge", "--poly", "x1^2", "--n", "8,16", "--replicas", "20"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("n,re_mean,im_mean,stderr,re_limit,im_limit,deviation\n"));
    assert_eq!(out.lines().count(), 3);
    let (code, out, _) = run(&["converge", "--poly", "x1^2", "--n", "8", "--replicas", "5", "--ensemble", "haar_unitary_scaled"]);
    assert_eq!(code, 0);
    assert!(out.contains("warning:") && out.contains("inapplicable"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_nctrace");
    let ok = Command::new(bin).args(["freelimit", "--poly", "x1^4", "--m", "1"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "2+0i\n");
    let bad = Command::new(bin).arg("nope").output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
}
