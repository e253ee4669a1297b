//! Experiment description and its `key = value` file format.
//!
//! ```text
//! # comments and blank lines are ignored
//! poly = x1*x2*x1*x2
//! m = 2
//! n = 64
//! ensemble = wigner_gaussian_real          # or one kind per variable, comma separated
//! replicas = 400
//! seed = 7
//! scale_by_sqrt_n = true
//! ```

use std::fmt::Write as _;

use nctrace_core::ensembles::{EnsembleKind, EnsembleSpec};
use nctrace_core::ncpoly::{self, Polynomial};
use nctrace_core::rng::Seed;

use crate::{LabError, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub poly_text: String,
    pub m: usize,
    pub n: usize,
    /// One shared ensemble, or one per variable.
    pub ensembles: Vec<EnsembleSpec>,
    pub replicas: usize,
    pub master_seed: Seed,
    pub scale_by_sqrt_n: bool,
    /// Skip the operation-count guard.
    pub force: bool,
}

impl ExperimentConfig {
    pub fn new(poly_text: impl Into<String>, m: usize, n: usize, ensemble: EnsembleSpec, replicas: usize, seed: u64) -> Self {
        Self {
            poly_text: poly_text.into(),
            m,
            n,
            ensembles: vec![ensemble],
            replicas,
            master_seed: Seed(seed),
            scale_by_sqrt_n: true,
            force: false,
        }
    }

    pub fn polynomial(&self) -> Result<Polynomial> {
        Ok(ncpoly::parse(&self.poly_text, self.m)?)
    }

    /// Ensemble used for variable `j` (0-based).
    pub fn ensemble_for(&self, j: usize) -> &EnsembleSpec {
        if self.ensembles.len() == 1 {
            &self.ensembles[0]
        } else {
            &self.ensembles[j]
        }
    }

    pub fn validate(&self) -> Result<Polynomial> {
        if self.m == 0 {
            return Err(LabError::Config("m must be positive".into()));
        }
        if self.n == 0 {
            return Err(LabError::Config("n must be positive".into()));
        }
        if self.replicas == 0 {
            return Err(LabError::Config("replicas must be at least 1".into()));
        }
        if self.ensembles.len() != 1 && self.ensembles.len() != self.m {
            return Err(LabError::Config(format!(
                "expected 1 or {} ensembles, got {}",
                self.m,
                self.ensembles.len()
            )));
        }
        for e in &self.ensembles {
            e.validate()?;
        }
        self.polynomial()
    }

    /// `replicas · d · n³`, the guard's operation estimate.
    pub fn operation_estimate(&self, degree: usize) -> f64 {
        self.replicas as f64 * degree.max(1) as f64 * (self.n as f64).powi(3)
    }

    pub fn parse(text: &str, origin: &str) -> Result<Self> {
        let mut poly = None;
        let mut m = None;
        let mut n = None;
        let mut ensembles = None;
        let mut replicas = None;
        let mut seed = None;
        let mut scale = true;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| LabError::format(origin, line_no, "expected `key = value`"))?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |what: &str| LabError::format(origin, line_no, format!("invalid {what}: {value:?}"));
            match key {
                "poly" => poly = Some(value.to_string()),
                "m" => m = Some(value.parse::<usize>().map_err(|_| bad("m"))?),
                "n" => n = Some(value.parse::<usize>().map_err(|_| bad("n"))?),
                "replicas" => replicas = Some(value.parse::<usize>().map_err(|_| bad("replicas"))?),
                "seed" => seed = Some(value.parse::<u64>().map_err(|_| bad("seed"))?),
                "scale_by_sqrt_n" => scale = value.parse::<bool>().map_err(|_| bad("scale_by_sqrt_n"))?,
                "ensemble" => {
                    let kinds = value
                        .split(',')
                        .map(|s| s.trim().parse::<EnsembleKind>().map(EnsembleSpec::new))
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|_| bad("ensemble"))?;
                    ensembles = Some(kinds);
                }
                other => return Err(LabError::format(origin, line_no, format!("unknown key {other:?}"))),
            }
        }
        let missing = |k: &str| LabError::Config(format!("{origin}: missing key {k:?}"));
        let cfg = ExperimentConfig {
            poly_text: poly.ok_or_else(|| missing("poly"))?,
            m: m.ok_or_else(|| missing("m"))?,
            n: n.ok_or_else(|| missing("n"))?,
            ensembles: ensembles.ok_or_else(|| missing("ensemble"))?,
            replicas: replicas.ok_or_else(|| missing("replicas"))?,
            master_seed: Seed(seed.ok_or_else(|| missing("seed"))?),
            scale_by_sqrt_n: scale,
            force: false,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_config_text(&self) -> String {
        let mut s = String::new();
        let kinds: Vec<&str> = self.ensembles.iter().map(|e| e.kind.name()).collect();
        let _ = writeln!(s, "poly = {}", self.poly_text);
        let _ = writeln!(s, "m = {}", self.m);
        let _ = writeln!(s, "n = {}", self.n);
        let _ = writeln!(s, "ensemble = {}", kinds.join(","));
        let _ = writeln!(s, "replicas = {}", self.replicas);
        let _ = writeln!(s, "seed = {}", self.master_seed.0);
        let _ = writeln!(s, "scale_by_sqrt_n = {}", self.scale_by_sqrt_n);
        s
    }
}
