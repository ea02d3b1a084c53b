//! Uniform partitions: exact part multiplicities, the occupancy law, and
//! the resulting variance scaling.

use granular_growth::models::{log_spaced_u32, simulate_sutton, SuttonConfig};
use granular_growth::oracle::{bose_einstein_occupancy, expected_part_multiplicity};
use granular_growth::randkit::{sample_uniform_partition, RngStream};
use granular_growth::stats::{fit_loglog_points, size_volatility_curve_with, CurveOptions, GrowthMeasure, Statistic};

fn main() -> granular_growth::Result<()> {
    let p = sample_uniform_partition(30, &RngStream::new(1, 0))?;
    println!("a partition of 30: {:?}", p.parts());

    println!("part  exact E[m]  occupancy law (total 60)");
    for x in [1, 2, 3, 5, 8, 13] {
        println!("{x:>4}  {:>10.4}  {:>10.4}", expected_part_multiplicity(60, x)?, bose_einstein_occupancy(60, x));
    }

    let panel = simulate_sutton(&SuttonConfig { size_grid: log_spaced_u32(100, 5000, 12), samples_per_size: 1000, seed: 2, ..Default::default() })?;
    let opts = CurveOptions { statistic: Statistic::Sd, measure: GrowthMeasure::Pct, exact_sizes: true, ..Default::default() };
    let curve = size_volatility_curve_with(&panel, &opts)?;
    let var: Vec<f64> = curve.values().iter().map(|s| s * s).collect();
    println!("slope of log Var(r|S): {:.3}", fit_loglog_points(&curve.centers(), &var)?.exponent);
    Ok(())
}
