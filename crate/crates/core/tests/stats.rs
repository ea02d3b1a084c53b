use granular_growth::models::{GrowthPanel, GrowthRecord};
use granular_growth::stats::*;
use granular_growth::Error;
use proptest::prelude::*;

/// Exact Pareto(1, mu) quantiles at the midpoints of n equal cells.
fn pareto_quantiles(mu: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| (1.0 - (i as f64 + 0.5) / n as f64).powf(-1.0 / mu)).collect()
}

#[test]
fn hill_recovers_pareto_index() {
    for mu in [0.7, 1.4, 2.5] {
        let xs = pareto_quantiles(mu, 100_000);
        let f = hill_estimator(&xs, default_hill_k(xs.len())).unwrap();
        assert!((f.exponent - mu).abs() < 0.01 * mu, "mu {mu}: {}", f.exponent);
        assert!(f.stderr > 0.0 && f.range.0 < f.range.1);
        let [a, b, c] = hill_plateau(&xs).unwrap();
        assert!(a.n_points < b.n_points && b.n_points < c.n_points);
    }
}

#[test]
fn hill_errors() {
    assert!(matches!(hill_estimator(&[1.0; 100], 5), Err(Error::Parameter(_))));
    assert!(matches!(hill_estimator(&[1.0, 2.0, 3.0], 10), Err(Error::InsufficientData(_))));
    assert!(matches!(hill_estimator(&[2.0; 100], 10), Err(Error::DegenerateData(_))));
    let mut xs = pareto_quantiles(1.0, 100);
    xs[3] = f64::NAN;
    assert!(matches!(hill_estimator(&xs, 10), Err(Error::Domain(_))));
    assert_eq!(default_hill_k(50), 10);
    assert_eq!(default_hill_k(1_000_000), 10_000);
    assert_eq!(default_hill_k(1000), 100);
}

#[test]
fn kurtosis_reference_values() {
    // Bias-corrected G2, cross-checked against an independent implementation.
    assert!((excess_kurtosis(&[1.0, 2.0, 3.0, 4.0, 5.0]).unwrap() + 1.2).abs() < 1e-12);
    assert!((excess_kurtosis(&[1.0, 2.0, 3.0, 4.0, 10.0]).unwrap() - 3.152).abs() < 1e-12);
    assert!(excess_kurtosis(&[1.0, 2.0, 3.0]).is_err());
    assert!(matches!(excess_kurtosis(&[1.0; 8]), Err(Error::DegenerateData(_))));
}

#[test]
fn chi_square_reference_values() {
    let (stat, p) = chi_square_uniform(&[10, 10, 10]).unwrap();
    assert_eq!(stat, 0.0);
    assert!((p - 1.0).abs() < 1e-12);
    // Counts giving statistic 10 over 4 degrees of freedom: sf = 6 e^-5.
    let (stat, p) = chi_square_uniform(&[10, 10, 10, 15, 5]).unwrap();
    assert!((stat - 5.0).abs() < 1e-12);
    let (stat2, p2) = chi_square_uniform(&[20, 20, 20, 30, 10]).unwrap();
    assert!((stat2 - 10.0).abs() < 1e-12);
    assert!((p2 - 0.040_427_681_994_512_8).abs() < 1e-10, "{p2}");
    assert!(p > p2);
    assert!(chi_square_uniform(&[5]).is_err());
}

#[test]
fn ks_on_exact_grid() {
    let n = 1000;
    let xs: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) / n as f64).collect();
    let d = ks_distance(&xs, |x| x.clamp(0.0, 1.0)).unwrap();
    assert!((d - 0.5 / n as f64).abs() < 1e-12);
    assert!(ks_distance(&[f64::NAN], |x| x).is_err());
    let ks: Vec<u64> = vec![0, 0, 1, 1];
    let d = ks_distance_discrete(&ks, |k| if k == 0 { 0.5 } else { 1.0 }).unwrap();
    assert!(d < 1e-15);
}

#[test]
fn kde_integrates_to_one() {
    let xs = pareto_quantiles(2.0, 5000).iter().map(|x| x.ln()).collect::<Vec<_>>();
    let d = kde_density(&xs, Bandwidth::Auto, 512).unwrap();
    assert!((d.integral() - 1.0).abs() < 1e-4, "{}", d.integral());
    assert!(d.densities().iter().all(|&p| p >= 0.0));
    assert!(silverman_bandwidth(&xs).unwrap() > 0.0);
    assert!(kde_density(&xs, Bandwidth::Fixed(1e-6), 16).is_err());
}

#[test]
fn quantiles_and_moments() {
    let xs = [4.0, 1.0, 3.0, 2.0, 5.0];
    assert_eq!(quantiles(&xs, &[0.0, 0.5, 1.0]).unwrap(), vec![1.0, 3.0, 5.0]);
    assert_eq!(mean(&xs), 3.0);
    assert_eq!(variance(&xs), 2.5);
}

#[test]
fn size_volatility_recovers_planted_slope() {
    // |g| = S^-0.25 exactly, alternating sign.
    let records: Vec<GrowthRecord> = (0..20_000u64)
        .map(|i| {
            let s = 10f64.powf(1.0 + 4.0 * i as f64 / 20_000.0);
            let g = s.powf(-0.25) * if i % 2 == 0 { 1.0 } else { -1.0 };
            GrowthRecord::from_log_growth(s, g, 1, 1.0).with_ids(i, 0)
        })
        .collect();
    let panel = GrowthPanel::new(records, "planted").unwrap();
    for st in [Statistic::MeanAbs, Statistic::Rms] {
        let c = size_volatility_curve(&panel, 20, st).unwrap();
        let f = fit_loglog_slope(&c).unwrap();
        assert!((f.exponent + 0.25).abs() < 2e-3, "{}: {}", st.name(), f.exponent);
        let inner = fit_loglog_slope_in(&c, 100.0, 10_000.0).unwrap();
        assert!((inner.exponent + 0.25).abs() < 2e-3);
    }
}

proptest! {
    #[test]
    fn hill_is_scale_invariant(mu in 0.5f64..3.0, pow in -8i32..8, n in 200usize..2000) {
        // Power-of-two factors keep the log ratios exact.
        let xs = pareto_quantiles(mu, n);
        let c = 2f64.powi(pow);
        let scaled: Vec<f64> = xs.iter().map(|x| x * c).collect();
        let k = default_hill_k(n);
        let a = hill_estimator(&xs, k).unwrap().exponent;
        let b = hill_estimator(&scaled, k).unwrap().exponent;
        prop_assert!((a - b).abs() <= 1e-12 * a);
    }

    #[test]
    fn ks_is_bounded(xs in prop::collection::vec(-5.0f64..5.0, 1..200)) {
        let d = ks_distance(&xs, |x| 0.5 * (1.0 + (x / 2.0).tanh())).unwrap();
        prop_assert!((0.0..=1.0).contains(&d));
    }

    #[test]
    fn loglog_fit_is_exact_for_power_laws(slope in -3.0f64..3.0, a in 0.1f64..10.0) {
        let xs: Vec<f64> = (1..30).map(|i| i as f64 * 1.5).collect();
        let ys: Vec<f64> = xs.iter().map(|x| a * x.powf(slope)).collect();
        let f = fit_loglog_points(&xs, &ys).unwrap();
        prop_assert!((f.exponent - slope).abs() < 1e-10);
    }
}
