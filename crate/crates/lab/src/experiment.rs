//! Replica sampling of `Z_P` and the statistics built on it.

use nctrace_core::ensembles::sample;
use nctrace_core::freeprob::free_moment;
use nctrace_core::matkernel::Matrix;
use nctrace_core::rng::Seed;
use nctrace_core::tails::{self, FittedBound, TailEstimate};
use nctrace_core::C64;
use rayon::prelude::*;

use crate::{ExperimentConfig, LabError, Result};

/// Elementary operation budget for [`run_experiment`].
pub const OPERATION_BUDGET: f64 = 1e12;

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentResult {
    pub config: ExperimentConfig,
    /// `Z_P` of replica `i` at index `i`.
    pub samples: Vec<C64>,
    pub mean: C64,
    /// Componentwise lower median.
    pub median: C64,
}

impl ExperimentResult {
    pub fn from_samples(config: ExperimentConfig, samples: Vec<C64>) -> Result<Self> {
        let mean = tails::mean(&samples)?;
        let median = tails::median(&samples)?;
        Ok(Self {
            config,
            samples,
            mean,
            median,
        })
    }

    /// Seed of replica `i`.
    pub fn replica_seed(&self, i: usize) -> Seed {
        self.config.master_seed.derive(i as u64)
    }

    pub fn tail_estimate(&self, grid: &[f64]) -> Result<TailEstimate> {
        Ok(tails::tail_estimate(&self.samples, grid)?)
    }

    pub fn lq_norms(&self, qs: &[f64]) -> Result<Vec<f64>> {
        Ok(tails::lq_norms(&self.samples, qs)?)
    }

    pub fn median_mean_gap(&self) -> Result<f64> {
        Ok(tails::median_mean_gap(&self.samples)?)
    }

    /// Fit on the default 40-point grid with the polynomial's degree.
    pub fn fit_tail(&self) -> Result<(TailEstimate, FittedBound)> {
        let d = self.config.polynomial()?.degree().max(1) as u32;
        let grid = tails::default_grid(&self.samples, 40)?;
        let tail = self.tail_estimate(&grid)?;
        let fit = tails::fit_tail_constants(&tail, self.config.n, d)?;
        Ok((tail, fit))
    }
}

/// Draws the `m` matrices of one replica, scaled by `1/√n` if requested.
pub fn replica_matrices(cfg: &ExperimentConfig, replica: usize) -> Result<Vec<Matrix>> {
    let seed = cfg.master_seed.derive(replica as u64);
    let scale = if cfg.scale_by_sqrt_n {
        1.0 / (cfg.n as f64).sqrt()
    } else {
        1.0
    };
    (0..cfg.m)
        .map(|j| {
            let x = sample(cfg.ensemble_for(j), cfg.n, seed.derive(j as u64))?;
            Ok(if scale == 1.0 { x } else { x.scale_real(scale) })
        })
        .collect()
}

/// Samples `Z_P` over all replicas on the current rayon pool.
///
/// Wrap the call in `ThreadPool::install` to cap the worker count; the
/// output does not depend on it.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentResult> {
    let poly = cfg.validate()?;
    let ops = cfg.operation_estimate(poly.degree());
    if ops > OPERATION_BUDGET && !cfg.force {
        return Err(LabError::Budget { ops });
    }
    let samples = (0..cfg.replicas)
        .into_par_iter()
        .map(|i| {
            let xs = replica_matrices(cfg, i)?;
            Ok(poly.trace_evaluate(&xs)?)
        })
        .collect::<Result<Vec<C64>>>()?;
    ExperimentResult::from_samples(cfg.clone(), samples)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConvergenceRow {
    pub n: usize,
    /// Mean of `n⁻¹Z` over replicas.
    pub mean_normalized: C64,
    /// Monte Carlo standard error of that mean (complex modulus).
    pub stderr: f64,
    pub limit: C64,
    /// `|mean_normalized − limit|`.
    pub deviation: f64,
}

impl ConvergenceRow {
    /// Deviation in units of the standard error.
    pub fn z_score(&self) -> f64 {
        self.deviation / self.stderr
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceTable {
    pub rows: Vec<ConvergenceRow>,
    /// False when the ensembles are not unit-variance Wigner kinds or the
    /// matrices are not normalized; the limit column is then informative
    /// only.
    pub limit_applicable: bool,
    pub warning: Option<String>,
}

/// Runs the template at each `n` and compares `n⁻¹Z` with the free limit.
///
/// The experiment at size `n` uses master seed `template.master_seed.derive(n)`.
pub fn convergence_study(template: &ExperimentConfig, n_list: &[usize]) -> Result<ConvergenceTable> {
    if n_list.is_empty() {
        return Err(LabError::Config("empty list of sizes".into()));
    }
    let poly = template.validate()?;
    let unit_wigner = template
        .ensembles
        .iter()
        .all(|e| e.kind.is_wigner() && e.offdiag_variance == 1.0);
    let warning = if !unit_wigner {
        Some("ensembles are not all unit-variance Wigner kinds; the free limit does not apply".to_string())
    } else if !template.scale_by_sqrt_n {
        Some("matrices are not scaled by 1/sqrt(n); the free limit does not apply".to_string())
    } else {
        None
    };
    let limit = free_moment(&poly);
    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let mut cfg = template.clone();
        cfg.n = n;
        cfg.master_seed = template.master_seed.derive(n as u64);
        let res = run_experiment(&cfg)?;
        let inv = 1.0 / n as f64;
        let mean = res.mean * inv;
        let r = res.samples.len();
        let var = if r > 1 {
            res.samples.iter().map(|z| (z * inv - mean).norm_sqr()).sum::<f64>() / (r - 1) as f64
        } else {
            f64::NAN
        };
        rows.push(ConvergenceRow {
            n,
            mean_normalized: mean,
            stderr: (var / r as f64).sqrt(),
            limit,
            deviation: (mean - limit).norm(),
        });
    }
    Ok(ConvergenceTable {
        rows,
        limit_applicable: warning.is_none(),
        warning,
    })
}
