//! Self-checking suites run by `nctrace verify`.
//!
//! Each suite draws its instances from a seed and reports the worst
//! residual it saw against a fixed tolerance.

use std::fmt;

use nctrace_core::constructions::{
    cyclic_dilation, extension_lb_on_support, fourier_matrix, odd_power_split, polarization_sum,
    polarization_terms, polarize_pair, sample_support, TruncationSpec,
};
use nctrace_core::freeprob::{free_moment_word, free_moment_word_brute_force, IndexWord};
use nctrace_core::matkernel::{
    herm_eigvals, power_trace, schatten_norm, HermitianMatrix, Matrix, SchattenIndex, SpectralTolerance,
};
use nctrace_core::rng::Seed;
use nctrace_core::C64;

use crate::Result;

pub const IDENTITY_TOL: f64 = 1e-9;
pub const INSTANCES: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Identities,
    Free,
    Kernel,
    All,
}

impl Suite {
    pub fn parse(name: &str) -> Option<Suite> {
        match name {
            "identities" => Some(Suite::Identities),
            "free" => Some(Suite::Free),
            "kernel" => Some(Suite::Kernel),
            "all" => Some(Suite::All),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub max_residual: f64,
    pub tolerance: f64,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.max_residual < self.tolerance
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:<12} cases={:<4} max_residual={:.3e} tol={:.0e}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.cases,
            self.max_residual,
            self.tolerance
        )
    }
}

pub fn run_suite(suite: Suite, seed: Seed) -> Result<Vec<CheckOutcome>> {
    let mut out = Vec::new();
    if matches!(suite, Suite::Identities | Suite::All) {
        out.extend(identities(seed.derive(0))?);
    }
    if matches!(suite, Suite::Free | Suite::All) {
        out.extend(free_checks()?);
    }
    if matches!(suite, Suite::Kernel | Suite::All) {
        out.extend(kernel_checks(seed.derive(1))?);
    }
    Ok(out)
}

/// Complex Gaussian matrix with entry variance `1/n`.
pub fn random_matrix(n: usize, seed: Seed) -> Matrix {
    let mut r = seed.stream();
    let s = (0.5 / n as f64).sqrt();
    Matrix::from_fn(n, n, |_, _| C64::new(s * r.gaussian(), s * r.gaussian()))
}

pub fn random_hermitian(n: usize, seed: Seed) -> HermitianMatrix {
    HermitianMatrix::hermitian_part(&random_matrix(n, seed)).expect("square")
}

/// Instance `i` of the identity suites: degree in `1..=6`, size in `1..=16`.
fn instance_shape(i: usize, seed: Seed) -> (u32, usize) {
    let mut r = seed.derive(i as u64).stream();
    let d = 1 + (r.next_u64() % 6) as u32;
    let n = 1 + (r.next_u64() % 16) as usize;
    (d, n)
}

fn relative(err: f64, scale: f64) -> f64 {
    err / scale.max(1.0)
}

pub fn identities(seed: Seed) -> Result<Vec<CheckOutcome>> {
    let mut pol = 0.0f64;
    let mut pair = 0.0f64;
    let mut dil = 0.0f64;
    let mut fourier = 0.0f64;
    let mut split = 0.0f64;
    for i in 0..INSTANCES {
        let case = seed.derive(i as u64);
        let (d, n) = instance_shape(i, seed);
        let a = random_matrix(n, case.derive(1));
        let b = random_matrix(n, case.derive(2));

        let target = a.pow(d)?;
        let scale = target.max_entry_modulus();
        let terms = polarization_terms(&a, d)?;
        pol = pol.max(relative(polarization_sum(&terms, d)?.max_entry_distance(&target)?, scale));
        pair = pair.max(relative(polarize_pair(&a, &b, d)?, scale));

        let ys: Vec<Matrix> = (0..d as u64).map(|k| random_matrix(n, case.derive(10 + k))).collect();
        let x = cyclic_dilation(&ys)?;
        let mut prod = ys[0].clone();
        for y in &ys[1..] {
            prod = prod.try_mul(y)?;
        }
        let lhs = power_trace(&x, d)?;
        let rhs = prod.trace()? * d as f64;
        dil = dil.max(relative((lhs - rhs).norm(), rhs.norm()));

        let k = 2 + (i % 15);
        let f = fourier_matrix(k)?;
        let ff = f.adjoint().try_mul(&f)?;
        fourier = fourier.max(ff.max_entry_distance(&Matrix::identity(k))?);

        let odd = 3 + 2 * (i as u32 % 2);
        let h = random_hermitian(n, case.derive(3));
        let (plus, minus) = odd_power_split(&h, odd)?;
        let tr = power_trace(&h, odd)?.re;
        split = split.max(relative((plus - minus - tr).abs(), plus + minus));
    }
    let mut out = vec![
        outcome("polarization", INSTANCES, pol),
        outcome("polarize", INSTANCES, pair),
        outcome("dilation", INSTANCES, dil),
        outcome("fourier", INSTANCES, fourier),
        outcome("split", INSTANCES, split),
    ];
    out.extend(extension_check(seed.derive(99), 50)?);
    Ok(out)
}

fn outcome(name: &'static str, cases: usize, max_residual: f64) -> CheckOutcome {
    CheckOutcome {
        name,
        cases,
        max_residual,
        tolerance: IDENTITY_TOL,
    }
}

/// Extension lower bound: never above `tr A^d` and nondecreasing in the
/// radius on a shared support (`extension`), exact inside the ball
/// (`ext-inside`). Residuals are relative to `max(1, tr A^d)`.
pub fn extension_check(seed: Seed, cases: usize) -> Result<Vec<CheckOutcome>> {
    let mut order = 0.0f64;
    let mut inside = 0.0f64;
    let mut inside_cases = 0;
    for i in 0..cases {
        let case = seed.derive(i as u64);
        let mut r = case.stream();
        let d = if i % 2 == 0 { 2 } else { 4 };
        let n = 1 + (r.next_u64() % 8) as usize;
        let a = random_hermitian(n, case.derive(1)).scale_real(0.5 + 2.0 * r.uniform());
        let tr = power_trace(&a, d)?.re;
        let scale = tr.abs().max(1.0);

        let radii = [0.5, 1.0, 2.0, 4.0];
        let big = TruncationSpec::new(radii[3], d)?;
        let support = sample_support(&big, n, 24, case.derive(2))?;
        let mut previous = f64::NEG_INFINITY;
        for &rad in &radii {
            let trunc = TruncationSpec::new(rad, d)?;
            let lb = extension_lb_on_support(&trunc, &a, &support)?;
            order = order.max((lb - tr) / scale);
            if trunc.contains(&a)? {
                inside = inside.max((tr - lb).abs() / scale);
                inside_cases += 1;
            }
            if previous.is_finite() {
                order = order.max((previous - lb) / scale);
            }
            previous = lb;
        }
    }
    Ok(vec![
        CheckOutcome {
            name: "extension",
            cases,
            max_residual: order,
            tolerance: IDENTITY_TOL,
        },
        CheckOutcome {
            name: "ext-inside",
            cases: inside_cases,
            max_residual: inside,
            tolerance: 1e-8,
        },
    ])
}

pub fn free_checks() -> Result<Vec<CheckOutcome>> {
    let catalan = [1u128, 2, 5, 14, 42];
    let mut cat_err = 0.0f64;
    for (k, &c) in catalan.iter().enumerate() {
        let w = IndexWord::new(vec![1; 2 * (k + 1)])?;
        cat_err = cat_err.max((free_moment_word(&w) as f64 - c as f64).abs());
    }
    let alt = free_moment_word(&IndexWord::new(vec![1, 2, 1, 2])?) as f64;

    let mut brute = 0.0f64;
    let mut words = 0;
    for len in 1..=8usize {
        for bits in 0..1u32 << len {
            let w = IndexWord::new((0..len).map(|k| 1 + ((bits >> k) & 1) as usize).collect())?;
            let diff = free_moment_word(&w) as f64 - free_moment_word_brute_force(&w)? as f64;
            brute = brute.max(diff.abs());
            words += 1;
        }
    }
    Ok(vec![
        CheckOutcome {
            name: "catalan",
            cases: catalan.len(),
            max_residual: cat_err,
            tolerance: 0.5,
        },
        CheckOutcome {
            name: "alternating",
            cases: 1,
            max_residual: alt,
            tolerance: 0.5,
        },
        CheckOutcome {
            name: "brute-force",
            cases: words,
            max_residual: brute,
            tolerance: 0.5,
        },
    ])
}

/// Spectral sanity on random Hermitian matrices: eigenvalue sums against
/// traces of powers, Schatten norms nonincreasing in `p`, and Hölder
/// interpolation `‖A‖_r ≤ ‖A‖_p^{1−θ} ‖A‖_q^θ`.
pub fn kernel_checks(seed: Seed) -> Result<Vec<CheckOutcome>> {
    let mut spectral = 0.0f64;
    let mut schatten = 0.0f64;
    for i in 0..INSTANCES {
        let case = seed.derive(i as u64);
        let n = 1 + i % 12;
        let h = random_hermitian(n, case);
        let eig = herm_eigvals(&h, SpectralTolerance::default())?;
        for d in 1..=4u32 {
            let sum: f64 = eig.iter().map(|l| l.powi(d as i32)).sum();
            let tr = power_trace(&h, d)?;
            spectral = spectral.max(relative((tr - sum).norm(), sum.abs()));
        }

        let a = random_matrix(n, case.derive(7));
        let ps = [1.0, 1.5, 2.0, 3.0, 4.0];
        let norms = ps
            .iter()
            .map(|&p| schatten_norm(&a, SchattenIndex::finite(p)?))
            .collect::<nctrace_core::Result<Vec<f64>>>()?;
        let inf = schatten_norm(&a, SchattenIndex::Infinity)?;
        for w in norms.windows(2) {
            schatten = schatten.max((w[1] - w[0]) / w[0]);
        }
        schatten = schatten.max((inf - norms[4]) / norms[4]);
        // 1/2 = (1−θ)/1 + θ/4 at θ = 2/3, so ‖A‖_2 ≤ ‖A‖_1^{1/3}‖A‖_4^{2/3}
        let bound = norms[0].powf(1.0 / 3.0) * norms[4].powf(2.0 / 3.0);
        schatten = schatten.max((norms[2] - bound) / bound);
    }
    Ok(vec![
        CheckOutcome {
            name: "spectrum",
            cases: INSTANCES,
            max_residual: spectral,
            tolerance: IDENTITY_TOL,
        },
        CheckOutcome {
            name: "schatten",
            cases: INSTANCES,
            max_residual: schatten,
            tolerance: IDENTITY_TOL,
        },
    ])
}
