use rand::Rng;

use super::config::SimonConfig;
use crate::error::Result;
use crate::randkit::{RngStream, StreamDomain};

/// Runs the arrival process and returns the final unit count of every firm,
/// in order of founding (seed firms first).
///
/// Each arrival founds a new firm with probability `b`; otherwise it joins
/// the owner of a uniformly chosen existing unit, i.e. a firm chosen with
/// probability proportional to its unit count. The first arrival into an
/// empty economy always founds a firm.
pub fn simulate_simon(cfg: &SimonConfig) -> Result<Vec<u64>> {
    cfg.validate().map_err(|e| e.context("simon"))?;
    let mut rng = RngStream::derived(cfg.seed, StreamDomain::Arrivals, 0).rng();
    let total = (cfg.n_seed_firms + cfg.n_steps) as usize;
    // owner[u] is the firm holding unit u.
    let mut owner: Vec<u32> = Vec::with_capacity(total);
    let mut counts: Vec<u64> = Vec::new();
    for f in 0..cfg.n_seed_firms as u32 {
        owner.push(f);
        counts.push(1);
    }
    for _ in 0..cfg.n_steps {
        let found = owner.is_empty() || (cfg.b > 0.0 && rng.gen::<f64>() < cfg.b);
        let firm = if found {
            counts.push(0);
            (counts.len() - 1) as u32
        } else {
            owner[rng.gen_range(0..owner.len())]
        };
        owner.push(firm);
        counts[firm as usize] += 1;
    }
    Ok(counts)
}
