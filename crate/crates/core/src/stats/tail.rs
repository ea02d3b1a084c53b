use super::FitResult;
use crate::error::{Error, Result};

/// `n^(2/3)` clamped to `[10, n/10]`.
pub fn default_hill_k(n: usize) -> usize {
    let k = (n as f64).powf(2.0 / 3.0).round() as usize;
    k.min(n / 10).max(10)
}

/// Hill estimate of the tail index from the top `k` order statistics.
///
/// Non-positive samples are ignored. The reported range runs from the
/// threshold `x_(n-k)` to the largest sample.
pub fn hill_estimator(samples: &[f64], k: usize) -> Result<FitResult> {
    if k < 10 {
        return Err(Error::param(format!("hill estimator needs k >= 10, got {k}")));
    }
    if samples.iter().any(|x| x.is_nan()) {
        return Err(Error::Domain("NaN in hill estimator input".into()));
    }
    let mut pos: Vec<f64> = samples.iter().copied().filter(|&x| x > 0.0).collect();
    if pos.len() < k + 1 {
        return Err(Error::InsufficientData(format!(
            "hill estimator with k = {k} needs at least {} positive samples, got {}",
            k + 1,
            pos.len()
        )));
    }
    let n = pos.len();
    // After this, pos[n-k..] holds the top k and pos[n-k-1] is the threshold.
    pos.select_nth_unstable_by(n - k - 1, |a, b| a.total_cmp(b));
    let threshold = pos[n - k - 1];
    let top = &mut pos[n - k..];
    top.sort_unstable_by(|a, b| a.total_cmp(b));
    let sum: f64 = top.iter().map(|x| (x / threshold).ln()).sum();
    if !(sum > 0.0) || !sum.is_finite() {
        return Err(Error::DegenerateData(
            "top order statistics show no spread above the threshold".into(),
        ));
    }
    let exponent = k as f64 / sum;
    Ok(FitResult {
        exponent,
        stderr: exponent / (k as f64).sqrt(),
        n_points: k,
        range: (threshold, top[k - 1]),
    })
}

/// Hill estimates at `k/2`, `k` and `2k` for the default `k`, for checking
/// that the estimate sits on a plateau.
pub fn hill_plateau(samples: &[f64]) -> Result<[FitResult; 3]> {
    let n = samples.iter().filter(|&&x| x > 0.0).count();
    let k = default_hill_k(n);
    Ok([
        hill_estimator(samples, (k / 2).max(10))?,
        hill_estimator(samples, k)?,
        hill_estimator(samples, (2 * k).min(n.saturating_sub(1)))?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_k_clamps() {
        assert_eq!(default_hill_k(50), 10);
        assert_eq!(default_hill_k(1_000_000), 10_000);
        assert_eq!(default_hill_k(1000), 100);
    }

    #[test]
    fn exact_geometric_sequence() {
        // x_i = e^(i/2): log spacings of 1/2 give a mean log excess of (k+1)/4.
        let xs: Vec<f64> = (0..100).map(|i| (i as f64 * 0.5).exp()).collect();
        let f = hill_estimator(&xs, 10).unwrap();
        assert!((f.exponent - 10.0 / 27.5).abs() < 1e-12);
        assert_eq!(f.n_points, 10);
    }

    #[test]
    fn errors() {
        assert!(matches!(hill_estimator(&[1.0; 100], 10), Err(Error::DegenerateData(_))));
        assert!(matches!(hill_estimator(&[1.0; 10], 10), Err(Error::InsufficientData(_))));
        assert!(hill_estimator(&[1.0; 100], 5).is_err());
    }
}
