use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use super::config::GpgConfig;
use super::simon::simulate_simon;
use super::types::{GrowthPanel, GrowthRecord};
use crate::error::Result;
use crate::randkit::{RngStream, StreamDomain};

/// Firms from the arrival process, log-normal unit sizes, then
/// `measure_window` periods of independent multiplicative unit shocks with
/// the unit count held fixed. One record per firm.
pub fn simulate_gpg(cfg: &GpgConfig) -> Result<GrowthPanel> {
    cfg.validate().map_err(|e| e.context("gpg"))?;
    let counts = simulate_simon(&cfg.simon())?;
    let digest = super::ModelConfig::Gpg(cfg.clone()).digest();

    let records: Vec<GrowthRecord> = counts
        .par_iter()
        .enumerate()
        .map_init(Vec::new, |units: &mut Vec<f64>, (firm, &k)| {
            let mut rng = RngStream::derived(cfg.seed, StreamDomain::Firm, firm as u64).rng();
            units.clear();
            units.extend((0..k).map(|_| {
                let z: f64 = StandardNormal.sample(&mut rng);
                (cfg.unit_log_sd * z).exp()
            }));
            let before: f64 = units.iter().sum();
            let q: f64 = units.iter().map(|x| x * x).sum();
            let h = if k == 1 { 1.0 } else { (q / (before * before)).clamp(1.0 / k as f64, 1.0) };
            if cfg.gibrat_log_sd > 0.0 {
                for _ in 0..cfg.measure_window {
                    for x in units.iter_mut() {
                        let z: f64 = StandardNormal.sample(&mut rng);
                        *x *= (cfg.gibrat_log_sd * z).exp();
                    }
                }
            }
            let after: f64 = units.iter().sum();
            GrowthRecord::from_log_growth(before, (after / before).ln(), k, h).with_ids(firm as u64, 0)
        })
        .collect();
    GrowthPanel::new(records, digest)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_shocks_no_growth() {
        let cfg = GpgConfig {
            n_steps: 2000,
            n_seed_firms: 100,
            gibrat_log_sd: 0.0,
            ..Default::default()
        };
        let p = simulate_gpg(&cfg).unwrap();
        assert_eq!(p.len(), 100);
        assert!(p.log_growths().iter().all(|&g| g == 0.0));
    }
}
