//! Text file formats: results CSV, tail CSV, fit line and matrix CSV.
//!
//! Floats are written with 17 significant digits so that reading a file
//! back reproduces every stored value bit for bit.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use nctrace_core::matkernel::Matrix;
use nctrace_core::tails::{FittedBound, TailEstimate};
use nctrace_core::C64;

use crate::{ExperimentResult, LabError, Result};

pub const RESULTS_HEADER: &str = "replica,n,seed,re_z,im_z";
pub const TAIL_HEADER: &str = "t,survival,count";

/// One row of a results CSV.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReplicaRecord {
    pub replica: usize,
    pub n: usize,
    pub seed: u64,
    pub z: C64,
}

pub fn records(res: &ExperimentResult) -> Vec<ReplicaRecord> {
    res.samples
        .iter()
        .enumerate()
        .map(|(i, &z)| ReplicaRecord {
            replica: i,
            n: res.config.n,
            seed: res.replica_seed(i).0,
            z,
        })
        .collect()
}

pub fn results_csv(records: &[ReplicaRecord]) -> String {
    let mut s = String::with_capacity(64 * (records.len() + 1));
    s.push_str(RESULTS_HEADER);
    s.push('\n');
    for r in records {
        let _ = writeln!(s, "{},{},{},{:.16e},{:.16e}", r.replica, r.n, r.seed, r.z.re, r.z.im);
    }
    s
}

pub fn parse_results_csv(text: &str, origin: &str) -> Result<Vec<ReplicaRecord>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == RESULTS_HEADER => {}
        _ => return Err(LabError::format(origin, 1, format!("expected header `{RESULTS_HEADER}`"))),
    }
    let mut out = Vec::new();
    for (idx, line) in lines {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 5 {
            return Err(LabError::format(origin, line_no, format!("expected 5 fields, found {}", fields.len())));
        }
        let bad = |what: &str| LabError::format(origin, line_no, format!("invalid {what}"));
        let re: f64 = fields[3].parse().map_err(|_| bad("re_z"))?;
        let im: f64 = fields[4].parse().map_err(|_| bad("im_z"))?;
        out.push(ReplicaRecord {
            replica: fields[0].parse().map_err(|_| bad("replica"))?,
            n: fields[1].parse().map_err(|_| bad("n"))?,
            seed: fields[2].parse().map_err(|_| bad("seed"))?,
            z: C64::new(re, im),
        });
    }
    if out.is_empty() {
        return Err(LabError::format(origin, 1, "no data rows"));
    }
    Ok(out)
}

pub fn tail_csv(tail: &TailEstimate) -> String {
    let mut s = String::from(TAIL_HEADER);
    s.push('\n');
    for ((t, p), c) in tail.grid.iter().zip(&tail.survival).zip(&tail.counts) {
        let _ = writeln!(s, "{t:.16e},{p:.16e},{c}");
    }
    s
}

pub fn fit_line(fit: &FittedBound) -> String {
    format!(
        "C_hat={:.16e} c_hat={:.16e} residual={:.16e} n={} d={}",
        fit.c_hat_big, fit.c_hat, fit.residual, fit.n, fit.d
    )
}

/// `a+bi` with both parts at 17 significant digits.
pub fn format_complex(z: C64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{:.16e}{}{:.16e}i", z.re, sign, z.im.abs())
}

/// Parses `a+bi`, `a-bi`, `a`, or `bi`.
pub fn parse_complex(s: &str) -> Option<C64> {
    let s = s.trim();
    let Some(body) = s.strip_suffix('i') else {
        return s.parse().ok().map(|re| C64::new(re, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => {
            let re = body[..k].parse().ok()?;
            let im_text = body[k..].strip_prefix('+').unwrap_or(&body[k..]);
            Some(C64::new(re, im_text.parse().ok()?))
        }
        None => Some(C64::new(0.0, body.parse().ok()?)),
    }
}

pub fn matrix_csv(m: &Matrix) -> String {
    let mut s = String::new();
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|&z| format_complex(z)).collect();
        s.push_str(&row.join(","));
        s.push('\n');
    }
    s
}

pub fn parse_matrix_csv(text: &str, origin: &str) -> Result<Matrix> {
    let mut data = Vec::new();
    let mut cols = None;
    let mut rows = 0;
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let before = data.len();
        for field in line.split(',') {
            let z = parse_complex(field)
                .ok_or_else(|| LabError::format(origin, idx + 1, format!("invalid entry {:?}", field.trim())))?;
            data.push(z);
        }
        let width = data.len() - before;
        if *cols.get_or_insert(width) != width {
            return Err(LabError::format(origin, idx + 1, "ragged row"));
        }
        rows += 1;
    }
    let cols = cols.ok_or_else(|| LabError::format(origin, 1, "empty matrix"))?;
    Ok(Matrix::new(rows, cols, data)?)
}

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| LabError::io(path, e))
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| LabError::io(path, e))
}
