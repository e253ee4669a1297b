//! Monte Carlo harness, file formats and verification suites on top of
//! [`nctrace_core`].
//!
//! [`run_experiment`] samples `Z_P = tr P(X_1/√n, …, X_m/√n)` over
//! independent replicas in parallel. Replica `i` draws variable `j` from
//! `master.derive(i).derive(j)`, so results do not depend on scheduling or
//! thread count.

pub mod cli;
pub mod config;
mod error;
pub mod experiment;
pub mod io;
pub mod verify;

pub use config::ExperimentConfig;
pub use error::LabError;
pub use experiment::{convergence_study, run_experiment, ConvergenceRow, ConvergenceTable, ExperimentResult};

pub type Result<T, E = LabError> = std::result::Result<T, E>;
