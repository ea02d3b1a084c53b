use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{Error, Result};

pub(crate) fn sorted_finite(samples: &[f64]) -> Result<Vec<f64>> {
    if let Some(x) = samples.iter().find(|x| !x.is_finite()) {
        return Err(Error::Domain(format!("non-finite sample {x}")));
    }
    let mut v = samples.to_vec();
    v.sort_unstable_by(|a, b| a.total_cmp(b));
    Ok(v)
}

pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Unbiased sample variance.
pub fn variance(xs: &[f64]) -> f64 {
    let m = mean(xs);
    xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (xs.len() as f64 - 1.0)
}

/// Linear-interpolation quantile of sorted data (`p` in `[0, 1]`).
pub fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    let pos = p.clamp(0.0, 1.0) * (sorted.len() - 1) as f64;
    let i = pos.floor() as usize;
    let frac = pos - i as f64;
    if i + 1 < sorted.len() {
        sorted[i] + frac * (sorted[i + 1] - sorted[i])
    } else {
        sorted[i]
    }
}

pub fn quantiles(samples: &[f64], levels: &[f64]) -> Result<Vec<f64>> {
    if samples.is_empty() {
        return Err(Error::InsufficientData("quantiles of an empty sample".into()));
    }
    let sorted = sorted_finite(samples)?;
    Ok(levels.iter().map(|&p| quantile_sorted(&sorted, p)).collect())
}

/// Bias-corrected excess kurtosis `G2`.
pub fn excess_kurtosis(samples: &[f64]) -> Result<f64> {
    if samples.len() < 4 {
        return Err(Error::InsufficientData(format!("kurtosis needs >= 4 samples, got {}", samples.len())));
    }
    let n = samples.len() as f64;
    let m = mean(samples);
    let (m2, m4) = samples.iter().fold((0.0, 0.0), |(a, b), x| {
        let d2 = (x - m) * (x - m);
        (a + d2, b + d2 * d2)
    });
    let (m2, m4) = (m2 / n, m4 / n);
    if !(m2 > 0.0) {
        return Err(Error::DegenerateData("zero variance".into()));
    }
    let g2 = m4 / (m2 * m2) - 3.0;
    Ok(((n + 1.0) * g2 + 6.0) * (n - 1.0) / ((n - 2.0) * (n - 3.0)))
}

/// Pearson chi-square test of equal cell probabilities: `(statistic, p-value)`.
pub fn chi_square_uniform(counts: &[u64]) -> Result<(f64, f64)> {
    if counts.len() < 2 {
        return Err(Error::param("chi-square test needs at least 2 cells"));
    }
    let total: u64 = counts.iter().sum();
    if total == 0 {
        return Err(Error::InsufficientData("no observations".into()));
    }
    let e = total as f64 / counts.len() as f64;
    let stat: f64 = counts.iter().map(|&c| (c as f64 - e).powi(2) / e).sum();
    let dist = ChiSquared::new((counts.len() - 1) as f64).map_err(|e| Error::Numeric(e.to_string()))?;
    Ok((stat, dist.sf(stat)))
}
