use std::f64::consts::PI;

use rand::Rng;
use rand_distr::Distribution;
use rayon::prelude::*;

use super::config::{FasConfig, Replication};
use super::types::{GrowthPanel, GrowthRecord};
use crate::error::{Error, Result};
use crate::randkit::{DiscretePowerLaw, RngStream, StableParams, StreamDomain};

/// Offspring law of one unit.
///
/// The power-law variant puts mass `q k^(-1-mu) / zeta(1+mu)` on `k >= 1` and
/// the remainder on 0, with `q` chosen so that the mean is exactly 1.
#[derive(Debug, Clone)]
pub enum ReplicationLaw {
    PowerLaw { law: DiscretePowerLaw, q: f64 },
    PointMass(u64),
}

impl ReplicationLaw {
    pub fn new(mu: f64, replication: Replication) -> Result<Self> {
        Ok(match replication {
            Replication::PointMass { n } => ReplicationLaw::PointMass(n),
            Replication::PowerLaw => {
                let law = DiscretePowerLaw::new(mu, 1)?;
                let q = 1.0 / law.mean();
                ReplicationLaw::PowerLaw { law, q }
            }
        })
    }

    pub fn mean(&self) -> f64 {
        match self {
            ReplicationLaw::PowerLaw { law, q } => q * law.mean(),
            ReplicationLaw::PointMass(n) => *n as f64,
        }
    }

    /// `P(n)` for the offspring count `n`.
    pub fn pmf(&self, n: u64) -> f64 {
        match self {
            ReplicationLaw::PowerLaw { law, q } => {
                if n == 0 {
                    1.0 - q
                } else {
                    q * law.pmf(n)
                }
            }
            ReplicationLaw::PointMass(m) => (n == *m) as u8 as f64,
        }
    }
}

impl Distribution<u64> for ReplicationLaw {
    #[inline]
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        match self {
            ReplicationLaw::PowerLaw { law, q } => {
                if rng.gen::<f64>() < *q {
                    law.sample(rng)
                } else {
                    0
                }
            }
            ReplicationLaw::PointMass(n) => *n,
        }
    }
}

/// Limit law of `(K(t+1) - K(t)) / K(t)^(1/mu)` for large `K(t)` under the
/// power-law replication with tail `mu`: totally skewed stable (S1),
/// `alpha = mu`, `beta = 1`, location 0 and scale matched to the tail
/// coefficient `c` of `P(n) ≈ c n^(-1-mu)`:
/// `scale^mu = c pi / (2 Gamma(1+mu) sin(pi mu / 2))`.
pub fn stable_limit(mu: f64) -> Result<StableParams> {
    if !(1.0 < mu && mu < 2.0) {
        return Err(Error::Regime(format!("stable limit needs 1 < mu < 2, got {mu}")));
    }
    let ReplicationLaw::PowerLaw { law, q } = ReplicationLaw::new(mu, Replication::PowerLaw)? else {
        unreachable!()
    };
    let c = q * law.tail_coefficient();
    let gamma = (c * PI / (2.0 * statrs::function::gamma::gamma(1.0 + mu) * (PI * mu / 2.0).sin())).powf(1.0 / mu);
    StableParams::new(mu, 1.0, gamma, 0.0)
}

/// Branching unit counts: every unit is replaced by an independent number of
/// offspring each period, and unit sizes are all 1 so that size equals count.
///
/// Records `r = K(t+1)/K(t) - 1` per period. A firm that reaches zero units
/// gets the extinction record (`r = -1`, no log growth) and stops.
pub fn simulate_fas(cfg: &FasConfig) -> Result<GrowthPanel> {
    cfg.validate().map_err(|e| e.context("fas"))?;
    let law = ReplicationLaw::new(cfg.mu, cfg.replication)?;
    let digest = super::ModelConfig::Fas(cfg.clone()).digest();
    let per = cfg.samples as u64;
    let n = cfg.k0_grid.len() as u64 * per;

    let records: Vec<GrowthRecord> = (0..n)
        .into_par_iter()
        .flat_map_iter(|firm| {
            let mut rng = RngStream::derived(cfg.seed, StreamDomain::Firm, firm).rng();
            let mut k = cfg.k0_grid[(firm / per) as usize];
            let mut out = Vec::with_capacity(cfg.n_periods as usize);
            for period in 0..cfg.n_periods {
                let next: u64 = (0..k).fold(0u64, |acc, _| acc.saturating_add(law.sample(&mut rng)));
                let r = next as f64 / k as f64 - 1.0;
                out.push(GrowthRecord::from_pct_growth(k as f64, r, k, 1.0 / k as f64).with_ids(firm, period));
                if next == 0 {
                    break;
                }
                k = next;
            }
            out
        })
        .collect();
    GrowthPanel::new(records, digest)
}

/// `K^((mu-1)/mu) r` for the period-0 records that start from `k0` units;
/// compare with [`stable_limit`].
pub fn rescaled_growth(panel: &GrowthPanel, mu: f64, k0: u64) -> Vec<f64> {
    panel
        .records()
        .iter()
        .filter(|r| r.period == 0 && r.unit_count == k0)
        .map(|r| (k0 as f64).powf((mu - 1.0) / mu) * r.pct_growth)
        .collect()
}
