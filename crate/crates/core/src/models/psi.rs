use rand::distributions::Open01;
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use super::config::PsiMixtureConfig;
use super::types::{GrowthPanel, GrowthRecord};
use crate::error::Result;
use crate::randkit::{RngStream, StreamDomain};

/// Gaussian growth whose variance is `sigma^2 K^psi`, with a continuous
/// `K ~ Exp(lambda)` per firm. Records carry `round(K)` (at least 1) as unit
/// count, `K` as size and the placeholder Herfindahl 1.
pub fn simulate_psi_mixture(cfg: &PsiMixtureConfig) -> Result<GrowthPanel> {
    cfg.validate().map_err(|e| e.context("psi mixture"))?;
    let digest = super::ModelConfig::PsiMixture(cfg.clone()).digest();
    let half_psi = 0.5 * cfg.psi;
    let records: Vec<GrowthRecord> = (0..cfg.n_firms as u64)
        .into_par_iter()
        .map(|firm| {
            let mut rng = RngStream::derived(cfg.seed, StreamDomain::Firm, firm).rng();
            let u: f64 = rng.sample(Open01);
            let k = -u.ln() / cfg.lambda;
            let z: f64 = rng.sample(StandardNormal);
            let g = cfg.sigma * k.powf(half_psi) * z;
            GrowthRecord::from_log_growth(k, g, (k.round() as u64).max(1), 1.0).with_ids(firm, 0)
        })
        .collect();
    GrowthPanel::new(records, digest)
}
