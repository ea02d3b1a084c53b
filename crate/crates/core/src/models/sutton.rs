use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use super::config::{ShockKind, SuttonConfig};
use super::types::{GrowthPanel, GrowthRecord};
use crate::error::Result;
use crate::randkit::{shared_table, RngStream, StreamDomain};

fn unit_shock<R: Rng>(kind: ShockKind, sd: f64, rng: &mut R) -> f64 {
    if sd == 0.0 {
        return 0.0;
    }
    // Redraw the (rare) shocks that would wipe out a unit.
    loop {
        let r = match kind {
            ShockKind::Gaussian => sd * Distribution::<f64>::sample(&StandardNormal, rng),
            ShockKind::Laplace => {
                let b = sd / std::f64::consts::SQRT_2;
                let u: f64 = rng.gen::<f64>() - 0.5;
                -b * u.signum() * (1.0 - 2.0 * u.abs()).ln()
            }
        };
        if r > -1.0 {
            return r;
        }
    }
}

/// For each size `S` in the grid, `samples_per_size` firms whose units are
/// a uniformly random partition of `S`; each unit gets an independent
/// percent shock and the firm grows by the share-weighted average.
///
/// Firm ids run over `(grid index, sample)` pairs in grid order.
pub fn simulate_sutton(cfg: &SuttonConfig) -> Result<GrowthPanel> {
    cfg.validate().map_err(|e| e.context("sutton"))?;
    let max = *cfg.size_grid.iter().max().expect("validated non-empty");
    let table = shared_table(max)?;
    let digest = super::ModelConfig::Sutton(cfg.clone()).digest();
    let per = cfg.samples_per_size as u64;
    let n = cfg.size_grid.len() as u64 * per;

    let records: Vec<GrowthRecord> = (0..n)
        .into_par_iter()
        .map(|firm| {
            let s = cfg.size_grid[(firm / per) as usize];
            let mut rng = RngStream::derived(cfg.seed, StreamDomain::Firm, firm).rng();
            let partition = table.sample(s, &mut rng).expect("size within table");
            let total = s as f64;
            let mut r = 0.0;
            let mut q = 0.0;
            for &x in partition.parts() {
                let x = x as f64;
                r += x * unit_shock(cfg.unit_shock_kind, cfg.unit_shock_sd, &mut rng);
                q += x * x;
            }
            let k = partition.len();
            let h = (q / (total * total)).clamp(1.0 / k as f64, 1.0);
            GrowthRecord::from_pct_growth(total, r / total, k as u64, h).with_ids(firm, 0)
        })
        .collect();
    GrowthPanel::new(records, digest)
}
