//! Unit replacement with a fat-tailed offspring law: volatility scaling and
//! the stable limit of rescaled growth.

use granular_growth::models::{log_spaced_u64, rescaled_growth, simulate_fas, stable_limit, FasConfig};
use granular_growth::oracle::stable_reference_quantiles;
use granular_growth::stats::{fit_loglog_slope, quantiles, size_volatility_curve_with, CurveOptions, GrowthMeasure, Statistic};

fn main() -> granular_growth::Result<()> {
    let mu = 1.5;
    let panel = simulate_fas(&FasConfig { mu, k0_grid: log_spaced_u64(30, 10_000, 60), samples: 400, seed: 1, ..Default::default() })?;
    let opts = CurveOptions { statistic: Statistic::MeanAbs, measure: GrowthMeasure::Pct, exact_sizes: true, ..Default::default() };
    let slope = fit_loglog_slope(&size_volatility_curve_with(&panel, &opts)?)?.exponent;
    println!("mean |r| slope {slope:.3}, predicted {:.3}", (1.0 - mu) / mu);

    let k0 = 3000;
    let single = simulate_fas(&FasConfig { mu, k0_grid: vec![k0], samples: 20_000, seed: 2, ..Default::default() })?;
    let x = rescaled_growth(&single, mu, k0);
    let limit = stable_limit(mu)?;
    println!("stable limit: alpha {}, beta {}, scale {:.4}", limit.alpha(), limit.beta(), limit.scale());
    let levels = [0.05, 0.25, 0.5, 0.75, 0.95];
    let emp = quantiles(&x, &levels)?;
    let reference = stable_reference_quantiles(&limit, &levels, 2_000_000, 3)?;
    for ((p, e), r) in levels.iter().zip(&emp).zip(&reference) {
        println!("q{p:.2}: simulated {e:>8.4}  stable {r:>8.4}");
    }
    Ok(())
}
