//! Empirical tails, moment norms and the fitted two-regime bound
//! `C·exp[−c·min{t², n·t^{2/d}}]` for samples of a trace statistic.
//!
//! All statistics are centered at the empirical mean and use the complex
//! modulus `|Z − mean|`.

use alloc::vec::Vec;

use crate::{math, Error, Result, C64};

fn require_samples(samples: &[C64]) -> Result<()> {
    if samples.is_empty() {
        return Err(Error::InvalidParameter("no samples"));
    }
    Ok(())
}

pub fn mean(samples: &[C64]) -> Result<C64> {
    require_samples(samples)?;
    Ok(samples.iter().sum::<C64>() / samples.len() as f64)
}

/// Lower median: element `(len − 1)/2` of the sorted values.
pub fn lower_median(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::InvalidParameter("no samples"));
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    Ok(v[(v.len() - 1) / 2])
}

/// Componentwise lower median of real and imaginary parts.
pub fn median(samples: &[C64]) -> Result<C64> {
    let re: Vec<f64> = samples.iter().map(|z| z.re).collect();
    let im: Vec<f64> = samples.iter().map(|z| z.im).collect();
    Ok(C64::new(lower_median(&re)?, lower_median(&im)?))
}

/// `|Z_i − mean|` for every sample.
pub fn deviations(samples: &[C64]) -> Result<Vec<f64>> {
    let m = mean(samples)?;
    Ok(samples.iter().map(|z| (z - m).norm()).collect())
}

/// Centered root mean square deviation.
pub fn std_dev(samples: &[C64]) -> Result<f64> {
    let dev = deviations(samples)?;
    Ok(math::sqrt(dev.iter().map(|d| d * d).sum::<f64>() / dev.len() as f64))
}

/// `|mean − median|` of the real parts.
pub fn median_mean_gap(samples: &[C64]) -> Result<f64> {
    let re: Vec<f64> = samples.iter().map(|z| z.re).collect();
    let m = re.iter().sum::<f64>() / re.len().max(1) as f64;
    Ok((m - lower_median(&re)?).abs())
}

/// Empirical survival function of `|Z − mean|` on a grid.
#[derive(Clone, Debug, PartialEq)]
pub struct TailEstimate {
    pub grid: Vec<f64>,
    pub survival: Vec<f64>,
    /// Number of samples with deviation `≥ t`.
    pub counts: Vec<usize>,
    pub replicas: usize,
}

/// `survival(t) = #{i : |Z_i − mean| ≥ t} / replicas`.
pub fn tail_estimate(samples: &[C64], grid: &[f64]) -> Result<TailEstimate> {
    if grid.is_empty() {
        return Err(Error::InvalidParameter("empty tail grid"));
    }
    if grid.iter().any(|t| !(*t >= 0.0) || !t.is_finite()) || grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter("tail grid must be increasing and nonnegative"));
    }
    let mut dev = deviations(samples)?;
    dev.sort_by(f64::total_cmp);
    let total = dev.len();
    let counts: Vec<usize> = grid
        .iter()
        .map(|&t| total - dev.partition_point(|&d| d < t))
        .collect();
    Ok(TailEstimate {
        grid: grid.to_vec(),
        survival: counts.iter().map(|&c| c as f64 / total as f64).collect(),
        counts,
        replicas: total,
    })
}

/// `points` geometric grid points from `0.05·σ̂` to the largest deviation.
pub fn default_grid(samples: &[C64], points: usize) -> Result<Vec<f64>> {
    let dev = deviations(samples)?;
    let sigma = math::sqrt(dev.iter().map(|d| d * d).sum::<f64>() / dev.len() as f64);
    let top = dev.iter().copied().fold(0.0, f64::max);
    let lo = 0.05 * sigma;
    if points < 2 || !(lo > 0.0) || top <= lo {
        return Err(Error::InvalidParameter("samples have no spread for a tail grid"));
    }
    let ratio = math::powf(top / lo, 1.0 / (points - 1) as f64);
    let mut grid: Vec<f64> = (0..points).map(|i| lo * math::powf(ratio, i as f64)).collect();
    grid[points - 1] = top;
    Ok(grid)
}

/// The two-regime exponent `min{t², n·t^{2/d}}`.
pub fn bound_exponent(t: f64, n: usize, d: u32) -> f64 {
    let t = t.max(0.0);
    let sub = t * t;
    let heavy = n as f64 * math::powf(t, 2.0 / d as f64);
    sub.min(heavy)
}

/// `C·exp[−c·min{t², n·t^{2/d}}]`, clipped to `[0, C]`.
pub fn theoretical_bound(t: f64, n: usize, d: u32, c_big: f64, c_small: f64) -> f64 {
    let v = c_big * math::exp(-c_small * bound_exponent(t, n, d));
    v.clamp(0.0, c_big)
}

/// Constants of the bound fitted to an empirical tail.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FittedBound {
    pub c_hat_big: f64,
    pub c_hat: f64,
    pub n: usize,
    pub d: u32,
    /// Root mean square residual of the log-survival regression.
    pub residual: f64,
}

impl FittedBound {
    pub fn evaluate(&self, t: f64) -> f64 {
        theoretical_bound(t, self.n, self.d, self.c_hat_big, self.c_hat)
    }
}

/// Least squares of `log survival` against `−min{t², n·t^{2/d}}` with
/// intercept `log C`. Zero-survival bins are dropped.
pub fn fit_tail_constants(tail: &TailEstimate, n: usize, d: u32) -> Result<FittedBound> {
    if n == 0 || d == 0 {
        return Err(Error::InvalidParameter("n and d must be positive"));
    }
    let pts: Vec<(f64, f64)> = tail
        .grid
        .iter()
        .zip(&tail.survival)
        .filter(|(_, &s)| s > 0.0)
        .map(|(&t, &s)| (bound_exponent(t, n, d), math::ln(s)))
        .collect();
    if pts.len() < 3 {
        return Err(Error::InsufficientTailData {
            positive_bins: pts.len(),
        });
    }
    let k = pts.len() as f64;
    let mu = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mu) * (p.0 - mu)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mu) * (p.1 - my)).sum();
    if !(sxx > 0.0) {
        return Err(Error::DegenerateFit);
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mu;
    let c_hat = -slope;
    if !(c_hat > 0.0) {
        return Err(Error::DegenerateFit);
    }
    let sse: f64 = pts
        .iter()
        .map(|&(u, y)| {
            let r = y - (intercept + slope * u);
            r * r
        })
        .sum();
    Ok(FittedBound {
        c_hat_big: math::exp(intercept),
        c_hat,
        n,
        d,
        residual: math::sqrt(sse / k),
    })
}

/// Centered empirical `L_q` norms `(mean |Z − mean|^q)^{1/q}`.
pub fn lq_norms(samples: &[C64], qs: &[f64]) -> Result<Vec<f64>> {
    if qs.is_empty() {
        return Err(Error::InvalidParameter("no moment orders"));
    }
    if qs.iter().any(|q| !(*q >= 1.0) || !q.is_finite()) {
        return Err(Error::InvalidParameter("moment orders must satisfy q >= 1"));
    }
    let dev = deviations(samples)?;
    let top = dev.iter().copied().fold(0.0, f64::max);
    Ok(qs
        .iter()
        .map(|&q| {
            if top == 0.0 {
                return 0.0;
            }
            let m = dev.iter().map(|d| math::powf(d / top, q)).sum::<f64>() / dev.len() as f64;
            top * math::powf(m, 1.0 / q)
        })
        .collect())
}

#[cfg(test)]
mod tests;
