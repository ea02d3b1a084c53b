//! Generative engines for the model families, producing growth panels.
//!
//! Every engine assigns one [`RngStream`](crate::randkit::RngStream) per firm
//! (or per sample), keyed by the firm index, so output does not depend on the
//! number of worker threads.

mod config;
mod fas;
mod gpg;
mod psi;
mod simon;
mod sutton;
mod types;
mod wyart_bouchaud;

pub use config::{
    log_spaced_u32, log_spaced_u64, FasConfig, GpgConfig, ModelConfig, PsiMixtureConfig,
    Replication, ShockKind, SimonConfig, SuttonConfig, WyartBouchaudConfig,
};
pub use fas::{rescaled_growth, simulate_fas, stable_limit, ReplicationLaw};
pub use gpg::simulate_gpg;
pub use psi::simulate_psi_mixture;
pub use simon::simulate_simon;
pub use sutton::simulate_sutton;
pub use types::{FirmComposition, GrowthPanel, GrowthRecord};
pub use wyart_bouchaud::simulate_wyart_bouchaud;

use crate::error::{Error, Result};

/// Firm growth as the share-weighted average of unit percent growth rates.
///
/// `r = sum_j (x_j / S) r_j`, so all-zero unit growth gives zero firm growth.
pub fn aggregate_growth(before: &FirmComposition, unit_pct_growth: &[f64]) -> Result<GrowthRecord> {
    let units = before.units();
    if units.len() != unit_pct_growth.len() {
        return Err(Error::Shape(format!(
            "{} unit growth rates for a firm with {} units",
            unit_pct_growth.len(),
            units.len()
        )));
    }
    if let Some(bad) = unit_pct_growth.iter().find(|r| !(**r > -1.0 && r.is_finite())) {
        return Err(Error::Domain(format!("unit growth rates must be finite and > -1, got {bad}")));
    }
    let s = before.size();
    let r = units
        .iter()
        .zip(unit_pct_growth)
        .map(|(x, r)| x * r)
        .sum::<f64>()
        / s;
    Ok(GrowthRecord::from_pct_growth(
        s,
        r,
        units.len() as u64,
        before.herfindahl(),
    ))
}

pub fn herfindahl(c: &FirmComposition) -> f64 {
    c.herfindahl()
}

/// `sigma_unit * sqrt(H)`: volatility of a firm whose units have equal,
/// independent volatilities.
pub fn firm_volatility(c: &FirmComposition, sigma_unit: f64) -> Result<f64> {
    if !(sigma_unit > 0.0 && sigma_unit.is_finite()) {
        return Err(Error::param(format!("sigma_unit must be positive, got {sigma_unit}")));
    }
    Ok(sigma_unit * c.herfindahl().sqrt())
}

/// Result of [`simulate`]: a growth panel, or unit counts for the arrival process.
#[derive(Debug, Clone)]
pub enum SimulationOutput {
    Panel(GrowthPanel),
    UnitCounts(Vec<u64>),
}

impl SimulationOutput {
    pub fn panel(&self) -> Option<&GrowthPanel> {
        match self {
            SimulationOutput::Panel(p) => Some(p),
            SimulationOutput::UnitCounts(_) => None,
        }
    }

    pub fn unit_counts(&self) -> Vec<u64> {
        match self {
            SimulationOutput::Panel(p) => p.unit_counts(),
            SimulationOutput::UnitCounts(k) => k.clone(),
        }
    }
}

/// Runs whichever model `cfg` describes.
pub fn simulate(cfg: &ModelConfig) -> Result<SimulationOutput> {
    Ok(match cfg {
        ModelConfig::WyartBouchaud(c) => SimulationOutput::Panel(simulate_wyart_bouchaud(c)?),
        ModelConfig::Simon(c) => SimulationOutput::UnitCounts(simulate_simon(c)?),
        ModelConfig::Gpg(c) => SimulationOutput::Panel(simulate_gpg(c)?),
        ModelConfig::PsiMixture(c) => SimulationOutput::Panel(simulate_psi_mixture(c)?),
        ModelConfig::Sutton(c) => SimulationOutput::Panel(simulate_sutton(c)?),
        ModelConfig::Fas(c) => SimulationOutput::Panel(simulate_fas(c)?),
    })
}
