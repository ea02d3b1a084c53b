//! Stable variates: the Gaussian and Cauchy special cases and a skewed law.

use granular_growth::oracle::{cauchy_cdf, gaussian_cdf};
use granular_growth::randkit::{sample_stable, RngStream, StableParams};
use granular_growth::stats::{ks_distance, quantiles};

fn main() -> granular_growth::Result<()> {
    let n = 500_000;
    let g = sample_stable(&StableParams::standard(2.0, 0.0)?, n, &RngStream::new(1, 0))?;
    println!("alpha 2: KS vs N(0, 2) = {:.4}", ks_distance(&g, |x| gaussian_cdf(x, 2f64.sqrt()))?);
    let c = sample_stable(&StableParams::standard(1.0, 0.0)?, n, &RngStream::new(1, 1))?;
    println!("alpha 1: KS vs Cauchy  = {:.4}", ks_distance(&c, cauchy_cdf)?);

    let skewed = sample_stable(&StableParams::new(1.5, 1.0, 1.0, 0.0)?, n, &RngStream::new(1, 2))?;
    let q = quantiles(&skewed, &[0.01, 0.5, 0.99])?;
    println!("alpha 1.5, beta 1: q01 {:.3}  median {:.3}  q99 {:.3}", q[0], q[1], q[2]);
    Ok(())
}
