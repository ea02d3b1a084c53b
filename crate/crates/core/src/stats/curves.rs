use serde::{Deserialize, Serialize};

use super::FitResult;
use crate::error::{Error, Result};
use crate::models::GrowthPanel;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BinnedPoint {
    pub center: f64,
    pub value: f64,
    pub count: usize,
}

/// Per-bin values of some statistic; centers strictly increasing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BinnedCurve {
    points: Vec<BinnedPoint>,
}

impl BinnedCurve {
    pub fn new(points: Vec<BinnedPoint>) -> Result<Self> {
        if points.windows(2).any(|w| !(w[0].center < w[1].center)) {
            return Err(Error::Shape("bin centers must be strictly increasing".into()));
        }
        Ok(Self { points })
    }

    /// Curve through exact points, each with count 1.
    pub fn from_xy(xs: &[f64], ys: &[f64]) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::Shape("x and y lengths differ".into()));
        }
        Self::new(
            xs.iter()
                .zip(ys)
                .map(|(&center, &value)| BinnedPoint { center, value, count: 1 })
                .collect(),
        )
    }

    pub fn points(&self) -> &[BinnedPoint] {
        &self.points
    }

    pub fn centers(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.center).collect()
    }

    pub fn values(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.value).collect()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Least-squares slope of `ln y` on `ln x` with its standard error.
pub fn fit_loglog_points(xs: &[f64], ys: &[f64]) -> Result<FitResult> {
    if xs.len() != ys.len() {
        return Err(Error::Shape("x and y lengths differ".into()));
    }
    if xs.len() < 3 {
        return Err(Error::InsufficientData(format!("log-log fit needs >= 3 points, got {}", xs.len())));
    }
    if let Some((x, y)) = xs.iter().zip(ys).find(|(x, y)| !(**x > 0.0 && **y > 0.0)) {
        return Err(Error::Domain(format!("log-log fit needs positive values, got ({x}, {y})")));
    }
    let n = xs.len() as f64;
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::DegenerateData("all abscissas are equal".into()));
    }
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let ssr: f64 = lx
        .iter()
        .zip(&ly)
        .map(|(x, y)| (y - my - slope * (x - mx)).powi(2))
        .sum();
    let stderr = (ssr / (n - 2.0) / sxx).sqrt();
    let lo = xs.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(FitResult {
        exponent: slope,
        stderr,
        n_points: xs.len(),
        range: (lo, hi),
    })
}

pub fn fit_loglog_slope(curve: &BinnedCurve) -> Result<FitResult> {
    fit_loglog_points(&curve.centers(), &curve.values())
}

/// Slope over the bins whose centers lie in `[lo, hi]`.
pub fn fit_loglog_slope_in(curve: &BinnedCurve, lo: f64, hi: f64) -> Result<FitResult> {
    let (xs, ys): (Vec<f64>, Vec<f64>) = curve
        .points()
        .iter()
        .filter(|p| p.center >= lo && p.center <= hi)
        .map(|p| (p.center, p.value))
        .unzip();
    fit_loglog_points(&xs, &ys)
}

/// Dispersion statistic computed per bin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Statistic {
    /// Mean of `|g|`, a proxy for `E[sigma | S]`.
    MeanAbs,
    /// `sqrt(mean(g^2))`, a proxy for `sqrt(E[sigma^2 | S])`.
    Rms,
    /// Sample standard deviation.
    Sd,
}

impl Statistic {
    pub fn name(&self) -> &'static str {
        match self {
            Statistic::MeanAbs => "mean_abs",
            Statistic::Rms => "rms",
            Statistic::Sd => "sd",
        }
    }

    pub fn apply(&self, xs: &[f64]) -> f64 {
        let n = xs.len() as f64;
        match self {
            Statistic::MeanAbs => xs.iter().map(|x| x.abs()).sum::<f64>() / n,
            Statistic::Rms => (xs.iter().map(|x| x * x).sum::<f64>() / n).sqrt(),
            Statistic::Sd => {
                if xs.len() < 2 || xs.iter().all(|&x| x == xs[0]) {
                    return 0.0;
                }
                let m = xs.iter().sum::<f64>() / n;
                (xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
            }
        }
    }
}

/// Which growth rate the curve measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum GrowthMeasure {
    #[default]
    Log,
    /// Percent growth; the only choice that keeps extinction records.
    Pct,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveOptions {
    pub n_bins: usize,
    pub statistic: Statistic,
    pub measure: GrowthMeasure,
    /// Bins with fewer records are dropped.
    pub min_occupancy: usize,
    /// One bin per distinct size instead of logarithmic bins.
    pub exact_sizes: bool,
}

impl Default for CurveOptions {
    fn default() -> Self {
        Self {
            n_bins: 20,
            statistic: Statistic::Rms,
            measure: GrowthMeasure::Log,
            min_occupancy: 30,
            exact_sizes: false,
        }
    }
}

/// Growth dispersion against size with logarithmic size bins and log growth.
pub fn size_volatility_curve(panel: &GrowthPanel, n_bins: usize, statistic: Statistic) -> Result<BinnedCurve> {
    size_volatility_curve_with(
        panel,
        &CurveOptions {
            n_bins,
            statistic,
            ..Default::default()
        },
    )
}

/// Bin centers are the geometric mean of the sizes that fall in each bin.
pub fn size_volatility_curve_with(panel: &GrowthPanel, opts: &CurveOptions) -> Result<BinnedCurve> {
    if panel.is_empty() {
        return Err(Error::InsufficientData("empty panel".into()));
    }
    if !opts.exact_sizes && opts.n_bins < 3 {
        return Err(Error::param(format!("need at least 3 bins, got {}", opts.n_bins)));
    }
    let pairs: Vec<(f64, f64)> = panel
        .records()
        .iter()
        .filter_map(|r| {
            let g = match opts.measure {
                GrowthMeasure::Log => r.log_growth?,
                GrowthMeasure::Pct => r.pct_growth,
            };
            (r.size_before > 0.0).then_some((r.size_before, g))
        })
        .collect();
    if pairs.is_empty() {
        return Err(Error::InsufficientData("no usable records".into()));
    }

    let mut groups: Vec<(f64, Vec<f64>)> = Vec::new();
    if opts.exact_sizes {
        let mut sorted = pairs;
        sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
        for (s, g) in sorted {
            match groups.last_mut() {
                Some((last, gs)) if *last == s => gs.push(g),
                _ => groups.push((s, vec![g])),
            }
        }
        // Same bookkeeping as the binned branch: first slot holds the sum of ln S.
        for (s, gs) in groups.iter_mut() {
            *s = s.ln() * gs.len() as f64;
        }
    } else {
        let lo = pairs.iter().map(|p| p.0).fold(f64::INFINITY, f64::min).ln();
        let hi = pairs.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max).ln();
        let width = (hi - lo) / opts.n_bins as f64;
        groups = vec![(0.0, Vec::new()); opts.n_bins];
        for (s, g) in pairs {
            let ls = s.ln();
            let b = if width > 0.0 {
                (((ls - lo) / width) as usize).min(opts.n_bins - 1)
            } else {
                0
            };
            groups[b].0 += ls;
            groups[b].1.push(g);
        }
    }

    let points = groups
        .into_iter()
        .filter(|(_, gs)| !gs.is_empty() && gs.len() >= opts.min_occupancy)
        .map(|(sum_ls, gs)| BinnedPoint {
            center: (sum_ls / gs.len() as f64).exp(),
            value: opts.statistic.apply(&gs),
            count: gs.len(),
        })
        .collect();
    BinnedCurve::new(points)
}
