//! Seedable random-variate generation for every law the models use.
//!
//! Each `sample_*` function is a pure function of its arguments: equal
//! parameters, count and [`RngStream`] give equal output. The distribution
//! types also implement [`rand_distr::Distribution`] so model code can draw
//! from a generator it already holds.

mod continuous;
mod discrete;
mod partition;
mod stable;
mod stream;

pub use continuous::{LogNormal, ParetoParams};
pub use discrete::{DiscretePowerLaw, Geometric, DEFAULT_TABLE_CUTOFF};
pub use partition::{
    partition_numbers_exact, shared_table, Partition, PartitionTable, PARTITION_CEILING,
};
pub use stable::StableParams;
pub use stream::{RngStream, StreamDomain};

use rand_distr::Distribution;

use crate::error::{Error, Result};

fn check_count(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::param("sample count must be at least 1"))
    } else {
        Ok(())
    }
}

fn draw<T, D: Distribution<T>>(dist: &D, n: usize, stream: &RngStream) -> Vec<T> {
    let mut rng = stream.rng();
    dist.sample_iter(&mut rng).take(n).collect()
}

pub fn sample_pareto(params: &ParetoParams, n: usize, stream: &RngStream) -> Result<Vec<f64>> {
    check_count(n)?;
    Ok(draw(params, n, stream))
}

pub fn sample_lognormal(
    log_mean: f64,
    log_sd: f64,
    n: usize,
    stream: &RngStream,
) -> Result<Vec<f64>> {
    check_count(n)?;
    Ok(draw(&LogNormal::new(log_mean, log_sd)?, n, stream))
}

/// Stable variates in the S1 parameterization (see [`StableParams`]).
pub fn sample_stable(params: &StableParams, n: usize, stream: &RngStream) -> Result<Vec<f64>> {
    check_count(n)?;
    Ok(draw(params, n, stream))
}

/// `P(K = k) ∝ k^(-1-alpha)` for `k >= kmin`.
pub fn sample_discrete_power_law(
    alpha: f64,
    kmin: u64,
    n: usize,
    stream: &RngStream,
) -> Result<Vec<u64>> {
    check_count(n)?;
    Ok(draw(&DiscretePowerLaw::new(alpha, kmin)?, n, stream))
}

pub fn sample_geometric(mean: f64, n: usize, stream: &RngStream) -> Result<Vec<u64>> {
    check_count(n)?;
    Ok(draw(&Geometric::new(mean)?, n, stream))
}

/// One partition of `total`, uniform over all of its partitions.
pub fn sample_uniform_partition(total: u32, stream: &RngStream) -> Result<Partition> {
    if total < 1 {
        return Err(Error::param("partition total must be at least 1"));
    }
    let table = shared_table(total)?;
    table.sample(total, &mut stream.rng())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_count_is_rejected() {
        let s = RngStream::new(1, 0);
        assert!(sample_pareto(&ParetoParams::new(1.0, 1.0).unwrap(), 0, &s).is_err());
        assert!(sample_geometric(1.0, 0, &s).is_err());
    }

    #[test]
    fn samplers_are_pure() {
        let s = RngStream::new(9, 3);
        let p = ParetoParams::new(1.0, 1.4).unwrap();
        assert_eq!(sample_pareto(&p, 100, &s).unwrap(), sample_pareto(&p, 100, &s).unwrap());
        let st = StableParams::standard(1.5, 0.3).unwrap();
        assert_eq!(sample_stable(&st, 100, &s).unwrap(), sample_stable(&st, 100, &s).unwrap());
        assert_eq!(
            sample_discrete_power_law(1.2, 1, 100, &s).unwrap(),
            sample_discrete_power_law(1.2, 1, 100, &s).unwrap()
        );
        assert_eq!(sample_uniform_partition(50, &s).unwrap(), sample_uniform_partition(50, &s).unwrap());
    }

    #[test]
    fn lognormal_tiny_sd_is_nearly_constant() {
        let s = RngStream::new(4, 0);
        let xs = sample_lognormal(0.7, 1e-12, 1000, &s).unwrap();
        assert!(xs.iter().all(|x| (x - 0.7f64.exp()).abs() < 1e-9));
    }

    #[test]
    fn power_law_respects_kmin() {
        let s = RngStream::new(5, 0);
        let ks = sample_discrete_power_law(1.2, 5, 100_000, &s).unwrap();
        assert_eq!(*ks.iter().min().unwrap(), 5);
    }
}
