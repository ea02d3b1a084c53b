//! Proportional growth without entry: kurtosis and tail of log growth.

use granular_growth::models::{simulate_gpg, GpgConfig};
use granular_growth::stats::{excess_kurtosis, hill_plateau, kde_density_on, quantiles, Bandwidth};

fn main() -> granular_growth::Result<()> {
    let panel = simulate_gpg(&GpgConfig { seed: 8, ..Default::default() })?;
    let g = panel.log_growths();
    println!("{} firms, excess kurtosis {:.3}", g.len(), excess_kurtosis(&g)?);
    let abs_g: Vec<f64> = g.iter().map(|x| x.abs()).collect();
    let [a, b, c] = hill_plateau(&abs_g)?;
    println!("1 + Hill of |g|: {:.2} {:.2} {:.2}", 1.0 + a.exponent, 1.0 + b.exponent, 1.0 + c.exponent);

    // Central 99% only; the tails would stretch the grid past the bandwidth.
    let q = quantiles(&g, &[0.005, 0.995])?;
    let d = kde_density_on(&g, Bandwidth::Auto, q[0], q[1], 41)?;
    let peak = d.densities().iter().copied().fold(0.0, f64::max);
    for (x, p) in d.points() {
        println!("{x:>8.4} {}", "#".repeat((60.0 * p / peak) as usize));
    }
    Ok(())
}
