use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::moments::{quantile_sorted, sorted_finite};
use crate::error::{Error, Result};

/// Density values on a strictly increasing grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityCurve {
    points: Vec<(f64, f64)>,
}

impl DensityCurve {
    pub fn new(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.windows(2).any(|w| !(w[0].0 < w[1].0)) {
            return Err(Error::Shape("density grid must be strictly increasing".into()));
        }
        if let Some(p) = points.iter().find(|p| !(p.1 >= 0.0)) {
            return Err(Error::Domain(format!("negative or NaN density {} at {}", p.1, p.0)));
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn grid(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.0).collect()
    }

    pub fn densities(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.1).collect()
    }

    /// Trapezoid integral over the grid.
    pub fn integral(&self) -> f64 {
        self.points
            .windows(2)
            .map(|w| 0.5 * (w[1].0 - w[0].0) * (w[0].1 + w[1].1))
            .sum()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Bandwidth {
    /// `0.9 min(sd, IQR/1.34) n^(-1/5)`.
    #[default]
    Auto,
    Fixed(f64),
}

/// Rule-of-thumb Gaussian kernel bandwidth. Falls back to the sd when the
/// IQR is zero.
pub fn silverman_bandwidth(samples: &[f64]) -> Result<f64> {
    let sorted = sorted_finite(samples)?;
    bandwidth_sorted(&sorted)
}

fn bandwidth_sorted(sorted: &[f64]) -> Result<f64> {
    let n = sorted.len() as f64;
    let m = sorted.iter().sum::<f64>() / n;
    let sd = (sorted.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0)).sqrt();
    if !(sd > 0.0) {
        return Err(Error::DegenerateData("samples have zero spread".into()));
    }
    let iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
    let spread = if iqr > 0.0 { sd.min(iqr / 1.34) } else { sd };
    Ok(0.9 * spread * n.powf(-0.2))
}

const SUPPORT: f64 = 8.0;

fn kde_eval(sorted: &[f64], h: f64, grid: &[f64]) -> Vec<f64> {
    let norm = 1.0 / (sorted.len() as f64 * h * (2.0 * std::f64::consts::PI).sqrt());
    grid.par_iter()
        .map(|&x| {
            let a = sorted.partition_point(|&s| s < x - SUPPORT * h);
            let b = sorted.partition_point(|&s| s <= x + SUPPORT * h);
            let sum: f64 = sorted[a..b]
                .iter()
                .map(|&s| {
                    let z = (x - s) / h;
                    (-0.5 * z * z).exp()
                })
                .sum();
            sum * norm
        })
        .collect()
}

fn check_kde_input(samples: &[f64], grid_size: usize) -> Result<Vec<f64>> {
    if samples.len() < 100 {
        return Err(Error::InsufficientData(format!("KDE needs >= 100 samples, got {}", samples.len())));
    }
    if grid_size < 2 {
        return Err(Error::param("KDE grid needs at least 2 points"));
    }
    sorted_finite(samples)
}

fn resolve(bandwidth: Bandwidth, sorted: &[f64]) -> Result<f64> {
    match bandwidth {
        Bandwidth::Auto => bandwidth_sorted(sorted),
        Bandwidth::Fixed(h) if h > 0.0 && h.is_finite() => Ok(h),
        Bandwidth::Fixed(h) => Err(Error::param(format!("bandwidth must be positive, got {h}"))),
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

/// Gaussian KDE on an even grid over `[min - 4h, max + 4h]`.
///
/// The grid reaches four bandwidths past the extreme samples so the curve
/// carries essentially all of the mass. A grid coarser than the bandwidth
/// cannot resolve the kernels and is rejected; use [`kde_density_on`] for a
/// window of heavy-tailed data.
pub fn kde_density(samples: &[f64], bandwidth: Bandwidth, grid_size: usize) -> Result<DensityCurve> {
    let sorted = check_kde_input(samples, grid_size)?;
    let h = resolve(bandwidth, &sorted)?;
    let lo = sorted[0] - 4.0 * h;
    let hi = sorted[sorted.len() - 1] + 4.0 * h;
    let step = (hi - lo) / (grid_size - 1) as f64;
    if step > h {
        return Err(Error::param(format!(
            "grid spacing {step:.3e} exceeds bandwidth {h:.3e}; raise grid_size to at least {}",
            ((hi - lo) / h).ceil() as usize + 1
        )));
    }
    let grid = linspace(lo, hi, grid_size);
    let dens = kde_eval(&sorted, h, &grid);
    DensityCurve::new(grid.into_iter().zip(dens).collect())
}

/// Gaussian KDE of all samples, evaluated on an even grid over `[lo, hi]`.
pub fn kde_density_on(
    samples: &[f64],
    bandwidth: Bandwidth,
    lo: f64,
    hi: f64,
    grid_size: usize,
) -> Result<DensityCurve> {
    if !(lo < hi) {
        return Err(Error::param(format!("empty evaluation window [{lo}, {hi}]")));
    }
    let sorted = check_kde_input(samples, grid_size)?;
    let h = resolve(bandwidth, &sorted)?;
    let grid = linspace(lo, hi, grid_size);
    let dens = kde_eval(&sorted, h, &grid);
    DensityCurve::new(grid.into_iter().zip(dens).collect())
}

/// Kolmogorov–Smirnov distance `sup |F_n - F|` against a continuous CDF.
pub fn ks_distance<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::InsufficientData("KS distance of an empty sample".into()));
    }
    if samples.iter().any(|x| x.is_nan()) {
        return Err(Error::Domain("NaN in KS input".into()));
    }
    let mut sorted = samples.to_vec();
    sorted.sort_unstable_by(|a, b| a.total_cmp(b));
    let n = sorted.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x);
        if !(0.0..=1.0).contains(&f) {
            return Err(Error::Domain(format!("cdf({x}) = {f} is not a probability")));
        }
        d = d.max((i + 1) as f64 / n - f).max(f - i as f64 / n);
    }
    Ok(d)
}

/// `max_k |F_n(k) - F(k)|` over the support points for integer data, with
/// `cdf(k) = P(X <= k)`.
pub fn ks_distance_discrete<F: Fn(u64) -> f64>(samples: &[u64], cdf: F) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::InsufficientData("KS distance of an empty sample".into()));
    }
    let mut sorted = samples.to_vec();
    sorted.sort_unstable();
    let n = sorted.len() as f64;
    // Just below the smallest sample the empirical CDF is still 0.
    let mut d: f64 = if sorted[0] > 0 { cdf(sorted[0] - 1) } else { 0.0 };
    let mut i = 0;
    while i < sorted.len() {
        let k = sorted[i];
        while i < sorted.len() && sorted[i] == k {
            i += 1;
        }
        d = d.max((i as f64 / n - cdf(k)).abs());
        // Between observed values the empirical CDF is flat.
        if i < sorted.len() && sorted[i] > k + 1 {
            d = d.max((i as f64 / n - cdf(sorted[i] - 1)).abs());
        }
    }
    Ok(d)
}
