//! Simon arrivals: power-law unit counts for b > 0, geometric for b = 0.

use granular_growth::models::{simulate_simon, SimonConfig};
use granular_growth::randkit::Geometric;
use granular_growth::stats::{hill_plateau, ks_distance_discrete};

fn main() -> granular_growth::Result<()> {
    let k = simulate_simon(&SimonConfig { b: 0.1, n_steps: 1_000_000, n_seed_firms: 0, seed: 5 })?;
    let kf: Vec<f64> = k.iter().map(|&x| x as f64).collect();
    let [_, mid, _] = hill_plateau(&kf)?;
    println!("b = 0.1: {} firms, density exponent {:.3} (2 + b/(1-b) = {:.3})", k.len(), 1.0 + mid.exponent, 2.0 + 0.1 / 0.9);

    let k0 = simulate_simon(&SimonConfig { b: 0.0, n_steps: 1_000_000, n_seed_firms: 10_000, seed: 6 })?;
    let excess: Vec<u64> = k0.iter().map(|&x| x - 1).collect();
    let m = excess.iter().sum::<u64>() as f64 / excess.len() as f64;
    let geo = Geometric::new(m)?;
    let d = ks_distance_discrete(&excess, |x| 1.0 - geo.survival(x + 1))?;
    println!("b = 0: mean K {:.1}, KS vs geometric {d:.4}", m + 1.0);
    Ok(())
}
