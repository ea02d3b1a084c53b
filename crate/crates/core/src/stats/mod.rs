//! Estimators and diagnostics that turn growth panels into exponents, curves
//! and goodness-of-fit numbers. All functions are pure.

mod curves;
mod density;
mod moments;
mod tail;

pub use curves::{
    fit_loglog_points, fit_loglog_slope, fit_loglog_slope_in, size_volatility_curve,
    size_volatility_curve_with, BinnedCurve, BinnedPoint, CurveOptions, GrowthMeasure, Statistic,
};
pub use density::{
    kde_density, kde_density_on, ks_distance, ks_distance_discrete, silverman_bandwidth,
    Bandwidth, DensityCurve,
};
pub use moments::{chi_square_uniform, excess_kurtosis, mean, quantile_sorted, quantiles, variance};
pub use tail::{default_hill_k, hill_estimator, hill_plateau};

use serde::{Deserialize, Serialize};

use crate::models::FirmComposition;

/// An estimated exponent or slope.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub exponent: f64,
    pub stderr: f64,
    pub n_points: usize,
    /// Abscissa range the fit used.
    pub range: (f64, f64),
}

/// `1 / H`, between 1 and the unit count.
pub fn effective_units(c: &FirmComposition) -> f64 {
    1.0 / c.herfindahl()
}
