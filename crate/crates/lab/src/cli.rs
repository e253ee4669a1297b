//! The `nctrace` command line.
//!
//! Exit codes: 0 on success, 1 on usage or validation errors, 2 when a
//! verification suite fails.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use nctrace_core::ensembles::{sample, EnsembleKind, EnsembleSpec};
use nctrace_core::freeprob::free_moment;
use nctrace_core::ncpoly;
use nctrace_core::rng::Seed;
use nctrace_core::tails;
use nctrace_core::C64;

use crate::experiment::{convergence_study, run_experiment};
use crate::io;
use crate::verify::{run_suite, Suite};
use crate::{ExperimentConfig, LabError, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_VERIFY_FAILED: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "nctrace", version, about = "Traces of noncommutative polynomials in random matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run self-checking suites: identities, free, kernel or all
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Draw one matrix and print it as CSV
    Sample {
        #[arg(long)]
        ensemble: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample Z_P over replicas and write the results CSV
    Experiment {
        #[command(flatten)]
        exp: ExperimentArgs,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Empirical tail of a results CSV, with a fit of the bound constants
    Tail {
        #[arg(long = "in")]
        input: PathBuf,
        /// Comma separated thresholds, or `default`
        #[arg(long, default_value = "default")]
        grid: String,
        /// Polynomial degree used by the fit
        #[arg(long, default_value_t = 1)]
        d: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Centered L_q norms and median/mean gap of a results CSV
    Moments {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_delimiter = ',', default_values_t = vec![1.0, 2.0, 4.0, 8.0])]
        q: Vec<f64>,
    },
    /// Free semicircular moment of a polynomial
    Freelimit {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        m: usize,
    },
    /// Mean of Z_P / n against the free limit over several sizes
    Converge {
        #[command(flatten)]
        exp: ExperimentArgs,
        #[arg(long, value_delimiter = ',', default_values_t = vec![32, 64, 128])]
        n: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub poly: Option<String>,
    #[arg(long)]
    pub m: Option<usize>,
    /// One kind, or one per variable separated by commas
    #[arg(long)]
    pub ensemble: Option<String>,
    #[arg(long)]
    pub replicas: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long)]
    pub force: bool,
}

impl ExperimentArgs {
    /// Config file values overridden by flags.
    fn resolve(&self, n: Option<usize>) -> Result<ExperimentConfig> {
        let mut cfg = match &self.config {
            Some(path) => ExperimentConfig::parse(&io::read_text(path)?, &path.display().to_string())?,
            None => {
                let poly = self.poly.clone().ok_or_else(|| LabError::Config("--poly or --config is required".into()))?;
                ExperimentConfig::new(poly, 1, 1, EnsembleKind::WignerGaussianReal.into(), 100, 0)
            }
        };
        if let Some(p) = &self.poly {
            cfg.poly_text = p.clone();
        }
        if let Some(m) = self.m {
            cfg.m = m;
        }
        if let Some(n) = n {
            cfg.n = n;
        }
        if let Some(e) = &self.ensemble {
            cfg.ensembles = parse_ensembles(e)?;
        }
        if let Some(r) = self.replicas {
            cfg.replicas = r;
        }
        if let Some(s) = self.seed {
            cfg.master_seed = Seed(s);
        }
        cfg.force |= self.force;
        if self.config.is_none() && self.m.is_none() {
            // smallest m covering the variables used
            cfg.m = max_var_index(&cfg.poly_text).max(1);
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn pool(&self) -> Result<rayon::ThreadPool> {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(t) = self.threads {
            if t == 0 {
                return Err(LabError::Config("--threads must be positive".into()));
            }
            b = b.num_threads(t);
        }
        b.build().map_err(|e| LabError::Config(e.to_string()))
    }
}

fn max_var_index(text: &str) -> usize {
    let b = text.as_bytes();
    let mut best = 0;
    let mut i = 0;
    while i < b.len() {
        if b[i] == b'x' {
            let start = i + 1;
            let mut j = start;
            while j < b.len() && b[j].is_ascii_digit() {
                j += 1;
            }
            if let Ok(v) = text[start..j].parse::<usize>() {
                best = best.max(v);
            }
            i = j.max(i + 1);
        } else {
            i += 1;
        }
    }
    best
}

fn parse_ensembles(text: &str) -> Result<Vec<EnsembleSpec>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<EnsembleKind>()
                .map(EnsembleSpec::new)
                .map_err(|_| LabError::Config(format!("unknown ensemble {:?}", s.trim())))
        })
        .collect()
}

/// `a+bi` with the shortest round-trip representation of each part.
pub fn format_moment(z: C64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}i", z.re, sign, z.im.abs())
}

fn emit(out: &Option<PathBuf>, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(path) => io::write_text(path, text),
        None => stdout.write_all(text.as_bytes()).map_err(|e| LabError::io("<stdout>", e)),
    }
}

fn read_samples(path: &Path) -> Result<Vec<C64>> {
    let recs = io::parse_results_csv(&io::read_text(path)?, &path.display().to_string())?;
    Ok(recs.into_iter().map(|r| r.z).collect())
}

/// Parses `argv` (program name first), runs the command, returns the exit code.
pub fn dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    dispatch_to(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn dispatch_to<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    EXIT_INVALID
                }
            };
        }
    };
    match execute(cli.command, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_INVALID
        }
    }
}

fn execute(cmd: Command, stdout: &mut dyn Write) -> Result<i32> {
    let w = |stdout: &mut dyn Write, s: String| writeln!(stdout, "{s}").map_err(|e| LabError::io("<stdout>", e));
    match cmd {
        Command::Verify { suite, seed } => {
            let suite = Suite::parse(&suite)
                .ok_or_else(|| LabError::Config(format!("unknown suite {suite:?} (identities, free, kernel, all)")))?;
            let outcomes = run_suite(suite, Seed(seed))?;
            let mut ok = true;
            for o in &outcomes {
                ok &= o.passed();
                w(stdout, o.to_string())?;
            }
            Ok(if ok { EXIT_OK } else { EXIT_VERIFY_FAILED })
        }
        Command::Sample { ensemble, n, seed, out } => {
            let spec = parse_ensembles(&ensemble)?;
            if spec.len() != 1 {
                return Err(LabError::Config("sample takes a single ensemble".into()));
            }
            let m = sample(&spec[0], n, Seed(seed))?;
            emit(&out, &io::matrix_csv(&m), stdout)?;
            Ok(EXIT_OK)
        }
        Command::Experiment { exp, n, out } => {
            let cfg = exp.resolve(n)?;
            let res = exp.pool()?.install(|| run_experiment(&cfg))?;
            let csv = io::results_csv(&io::records(&res));
            if out.is_some() {
                emit(&out, &csv, stdout)?;
                w(
                    stdout,
                    format!(
                        "replicas={} n={} mean={} median={}",
                        res.samples.len(),
                        cfg.n,
                        io::format_complex(res.mean),
                        io::format_complex(res.median)
                    ),
                )?;
            } else {
                emit(&out, &csv, stdout)?;
            }
            Ok(EXIT_OK)
        }
        Command::Tail { input, grid, d, out } => {
            let recs = io::parse_results_csv(&io::read_text(&input)?, &input.display().to_string())?;
            let n = recs[0].n;
            let samples: Vec<C64> = recs.into_iter().map(|r| r.z).collect();
            let grid = if grid == "default" {
                tails::default_grid(&samples, 40)?
            } else {
                grid.split(',')
                    .map(|s| s.trim().parse::<f64>().map_err(|_| LabError::Config(format!("invalid grid value {s:?}"))))
                    .collect::<Result<Vec<_>>>()?
            };
            let tail = tails::tail_estimate(&samples, &grid)?;
            emit(&out, &io::tail_csv(&tail), stdout)?;
            match tails::fit_tail_constants(&tail, n, d.max(1)) {
                Ok(fit) => w(stdout, io::fit_line(&fit))?,
                Err(e) => w(stdout, format!("fit unavailable: {e}"))?,
            }
            Ok(EXIT_OK)
        }
        Command::Moments { input, q } => {
            let samples = read_samples(&input)?;
            let norms = tails::lq_norms(&samples, &q)?;
            for (q, v) in q.iter().zip(norms) {
                w(stdout, format!("q={q} lq={v:.16e}"))?;
            }
            if samples.len() >= 2 {
                w(stdout, format!("median_mean_gap={:.16e}", tails::median_mean_gap(&samples)?))?;
            }
            Ok(EXIT_OK)
        }
        Command::Freelimit { poly, m } => {
            let p = ncpoly::parse(&poly, m)?;
            w(stdout, format_moment(free_moment(&p)))?;
            Ok(EXIT_OK)
        }
        Command::Converge { exp, n, out } => {
            let cfg = exp.resolve(Some(n[0]))?;
            let table = exp.pool()?.install(|| convergence_study(&cfg, &n))?;
            let mut csv = String::from("n,re_mean,im_mean,stderr,re_limit,im_limit,deviation\n");
            for r in &table.rows {
                csv.push_str(&format!(
                    "{},{:.16e},{:.16e},{:.16e},{},{},{:.16e}\n",
                    r.n,
                    r.mean_normalized.re,
                    r.mean_normalized.im,
                    r.stderr,
                    r.limit.re,
                    r.limit.im,
                    r.deviation
                ));
            }
            if let Some(warning) = &table.warning {
                w(stdout, format!("warning: {warning}"))?;
            }
            emit(&out, &csv, stdout)?;
            if !table.limit_applicable {
                w(stdout, "limit column inapplicable".to_string())?;
            }
            Ok(EXIT_OK)
        }
    }
}
