//! Independent references: quadrature and closed forms for Gaussian scale
//! mixtures, exhaustive partition enumeration, predicted scaling exponents
//! and sampled stable quantiles.

mod exponents;
mod mixture;
mod partitions;
mod quadrature;

pub use exponents::{exponent, scaling_exponent_table, ExponentParams, ExponentRow};
pub use mixture::{
    cauchy_cdf, gaussian_cdf, gaussian_pdf, laplace_cdf, laplace_density, laplace_scale,
    mixture_cdf_numeric, mixture_density_at, mixture_density_numeric, student2_cdf,
    student2_density, KLaw, MixtureSpec,
};
pub use partitions::{
    bose_einstein_occupancy, count_partitions_by_enumeration, enumerate_partitions,
    expected_part_multiplicities, expected_part_multiplicity, for_each_partition,
    ENUMERATION_LIMIT,
};
pub use quadrature::{integrate_unit, Node};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::randkit::{RngStream, StableParams, StreamDomain};
use crate::stats::{ks_distance, quantile_sorted};

/// KS distance between `samples` and the Laplace law with scale
/// `sigma / sqrt(2 lambda)`.
pub fn laplace_scale_mixture_check(samples: &[f64], lambda: f64, sigma: f64) -> Result<f64> {
    if samples.len() < 10_000 {
        return Err(Error::InsufficientData(format!(
            "Laplace check needs >= 10^4 samples, got {}",
            samples.len()
        )));
    }
    if !(lambda > 0.0 && sigma > 0.0) {
        return Err(Error::param("lambda and sigma must be positive"));
    }
    ks_distance(samples, |g| laplace_cdf(g, lambda, sigma))
}

const REFERENCE_CHUNK: usize = 1 << 16;

/// Quantiles of `n` stable draws, generated in fixed chunks with one
/// derived stream each so the result does not depend on the thread count.
pub fn stable_reference_quantiles(params: &StableParams, levels: &[f64], n: usize, seed: u64) -> Result<Vec<f64>> {
    use rand_distr::Distribution;
    if n < 2 {
        return Err(Error::param("need at least 2 reference draws"));
    }
    let chunks = n.div_ceil(REFERENCE_CHUNK);
    let mut draws: Vec<f64> = (0..chunks)
        .into_par_iter()
        .flat_map_iter(|c| {
            let len = REFERENCE_CHUNK.min(n - c * REFERENCE_CHUNK);
            let mut rng = RngStream::derived(seed, StreamDomain::Reference, c as u64).rng();
            (0..len).map(move |_| params.sample(&mut rng))
        })
        .collect();
    draws.par_sort_unstable_by(|a, b| a.total_cmp(b));
    Ok(levels.iter().map(|&p| quantile_sorted(&draws, p)).collect())
}

/// KS distance between `samples` and the quadrature CDF of `spec`.
///
/// The CDF is evaluated by quadrature at `nodes` order statistics (always
/// including the extremes) and interpolated linearly in between; the
/// interpolation error is far below the KS resolution for `nodes` in the
/// thousands.
pub fn mixture_ks_distance(spec: &MixtureSpec, samples: &[f64], nodes: usize) -> Result<f64> {
    if samples.len() < 2 || nodes < 2 {
        return Err(Error::InsufficientData("need at least 2 samples and 2 nodes".into()));
    }
    let mut sorted = samples.to_vec();
    if sorted.iter().any(|x| x.is_nan()) {
        return Err(Error::Domain("NaN in KS input".into()));
    }
    sorted.par_sort_unstable_by(|a, b| a.total_cmp(b));
    let n = sorted.len();
    let mut xs: Vec<f64> = (0..nodes)
        .map(|j| sorted[(j as f64 * (n - 1) as f64 / (nodes - 1) as f64).round() as usize])
        .collect();
    xs.dedup();
    let fs = xs
        .par_iter()
        .map(|&x| mixture_cdf_numeric(spec, x))
        .collect::<Result<Vec<f64>>>()?;
    let mut d: f64 = 0.0;
    let mut j = 0;
    for (i, &x) in sorted.iter().enumerate() {
        while j + 1 < xs.len() && xs[j + 1] < x {
            j += 1;
        }
        let f = if j + 1 < xs.len() && xs[j + 1] > xs[j] {
            let t = ((x - xs[j]) / (xs[j + 1] - xs[j])).clamp(0.0, 1.0);
            fs[j] + t * (fs[j + 1] - fs[j])
        } else {
            fs[j]
        };
        d = d.max((i + 1) as f64 / n as f64 - f).max(f - i as f64 / n as f64);
    }
    Ok(d)
}
