use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use super::config::WyartBouchaudConfig;
use super::types::{GrowthPanel, GrowthRecord};
use crate::error::Result;
use crate::randkit::{DiscretePowerLaw, ParetoParams, RngStream, StreamDomain};

/// One record per firm: `K` units (power law in `alpha`, or fixed), unit
/// sizes Pareto(1, `mu`), log growth Gaussian with variance `sigma_unit^2 H`.
///
/// With `per_unit_shocks` each unit gets its own Gaussian log shock and the
/// firm's log growth is their share-weighted sum, which has the same law.
pub fn simulate_wyart_bouchaud(cfg: &WyartBouchaudConfig) -> Result<GrowthPanel> {
    cfg.validate()
        .map_err(|e| e.context("wyart-bouchaud"))?;
    let k_law = match cfg.fixed_units {
        Some(_) => None,
        None => Some(DiscretePowerLaw::new(cfg.alpha, 1)?),
    };
    let unit_law = ParetoParams::new(1.0, cfg.mu)?;
    let digest = super::ModelConfig::WyartBouchaud(cfg.clone()).digest();

    let records: Vec<GrowthRecord> = (0..cfg.n_firms as u64)
        .into_par_iter()
        .map_init(Vec::new, |units: &mut Vec<f64>, firm| {
            let mut rng = RngStream::derived(cfg.seed, StreamDomain::Firm, firm).rng();
            let k = match (&k_law, cfg.fixed_units) {
                (_, Some(k)) => k,
                (Some(law), None) => law.sample(&mut rng),
                (None, None) => unreachable!(),
            };
            units.clear();
            units.extend((0..k).map(|_| unit_law.sample(&mut rng)));
            let s: f64 = units.iter().sum();
            let h = if k == 1 {
                1.0
            } else {
                let q: f64 = units.iter().map(|x| x * x).sum();
                (q / (s * s)).clamp(1.0 / k as f64, 1.0)
            };
            let g = if cfg.per_unit_shocks {
                units
                    .iter()
                    .map(|x| {
                        let e: f64 = StandardNormal.sample(&mut rng);
                        x / s * cfg.sigma_unit * e
                    })
                    .sum()
            } else {
                let e: f64 = StandardNormal.sample(&mut rng);
                cfg.sigma_unit * h.sqrt() * e
            };
            GrowthRecord::from_log_growth(s, g, k, h).with_ids(firm, 0)
        })
        .collect();
    GrowthPanel::new(records, digest)
}
