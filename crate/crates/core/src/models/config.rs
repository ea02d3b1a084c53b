use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::randkit::PARTITION_CEILING;

/// Parameters of one model family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModelConfig {
    WyartBouchaud(WyartBouchaudConfig),
    Simon(SimonConfig),
    Gpg(GpgConfig),
    PsiMixture(PsiMixtureConfig),
    Sutton(SuttonConfig),
    Fas(FasConfig),
}

/// Fixed-unit-count firms with Pareto unit sizes, unit count drawn from an
/// integer power law unless `fixed_units` is set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WyartBouchaudConfig {
    /// Tail exponent of the unit-count law `P(K) ~ K^(-1-alpha)`.
    pub alpha: f64,
    /// Tail exponent of the unit-size law `P(x) ~ x^(-1-mu)`.
    pub mu: f64,
    pub sigma_unit: f64,
    pub n_firms: usize,
    /// Every firm gets exactly this many units instead of a power-law draw.
    pub fixed_units: Option<u64>,
    /// Draw explicit unit shocks and aggregate them instead of sampling the
    /// conditional Gaussian directly.
    pub per_unit_shocks: bool,
    pub seed: u64,
}

impl Default for WyartBouchaudConfig {
    fn default() -> Self {
        Self {
            alpha: 1.2,
            mu: 1.4,
            sigma_unit: 0.1,
            n_firms: 100_000,
            fixed_units: None,
            per_unit_shocks: false,
            seed: 0,
        }
    }
}

/// Sequential arrivals of units: found a firm with probability `b`,
/// otherwise join a firm chosen with probability proportional to its size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimonConfig {
    pub b: f64,
    pub n_steps: u64,
    /// Single-unit firms present before the first arrival.
    pub n_seed_firms: u64,
    pub seed: u64,
}

impl Default for SimonConfig {
    fn default() -> Self {
        Self {
            b: 0.1,
            n_steps: 1_000_000,
            n_seed_firms: 0,
            seed: 0,
        }
    }
}

/// Simon-process firms with log-normal units hit by Gibrat shocks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GpgConfig {
    pub b: f64,
    pub n_steps: u64,
    pub n_seed_firms: u64,
    /// Log-sd of the initial unit sizes; zero gives equal units.
    pub unit_log_sd: f64,
    /// Log-sd of each per-period multiplicative unit shock.
    pub gibrat_log_sd: f64,
    /// Periods of shocks between the two size measurements.
    pub measure_window: u32,
    pub seed: u64,
}

impl Default for GpgConfig {
    fn default() -> Self {
        Self {
            b: 0.0,
            n_steps: 1_000_000,
            n_seed_firms: 100_000,
            unit_log_sd: 1.0,
            gibrat_log_sd: 0.1,
            measure_window: 1,
            seed: 0,
        }
    }
}

impl GpgConfig {
    pub fn simon(&self) -> SimonConfig {
        SimonConfig {
            b: self.b,
            n_steps: self.n_steps,
            n_seed_firms: self.n_seed_firms,
            seed: self.seed,
        }
    }
}

/// Gaussian growth with variance `sigma^2 K^psi`, `K` exponential with rate `lambda`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PsiMixtureConfig {
    pub psi: f64,
    pub lambda: f64,
    pub sigma: f64,
    pub n_firms: usize,
    pub seed: u64,
}

impl Default for PsiMixtureConfig {
    fn default() -> Self {
        Self {
            psi: -1.0,
            lambda: 1.0,
            sigma: 1.0,
            n_firms: 100_000,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum ShockKind {
    #[default]
    Gaussian,
    Laplace,
}

/// Firms of integer size split uniformly over all integer partitions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuttonConfig {
    pub size_grid: Vec<u32>,
    pub samples_per_size: usize,
    /// Standard deviation of the unit percent shocks.
    pub unit_shock_sd: f64,
    pub unit_shock_kind: ShockKind,
    pub seed: u64,
}

impl Default for SuttonConfig {
    fn default() -> Self {
        Self {
            size_grid: log_spaced_u32(100, 5000, 20),
            samples_per_size: 2000,
            unit_shock_sd: 0.05,
            unit_shock_kind: ShockKind::Gaussian,
            seed: 0,
        }
    }
}

/// Number of offspring that replace a unit each period.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case", tag = "law")]
pub enum Replication {
    /// `P(n) ∝ n^(-1-mu)` for `n >= 1`, with `P(0)` set so the mean is 1.
    #[default]
    PowerLaw,
    /// Always exactly `n` offspring.
    PointMass { n: u64 },
}

/// Unit-replacement branching: each unit is replaced by a random number of new units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FasConfig {
    pub mu: f64,
    pub k0_grid: Vec<u64>,
    pub n_periods: u32,
    pub samples: usize,
    pub replication: Replication,
    pub seed: u64,
}

impl Default for FasConfig {
    fn default() -> Self {
        Self {
            mu: 1.5,
            k0_grid: log_spaced_u64(30, 10_000, 120),
            n_periods: 1,
            samples: 400,
            replication: Replication::PowerLaw,
            seed: 0,
        }
    }
}

/// Distinct rounded values of a geometric progression from `lo` to `hi`.
pub fn log_spaced_u64(lo: u64, hi: u64, points: usize) -> Vec<u64> {
    assert!(lo >= 1 && hi >= lo && points >= 2);
    let (a, b) = ((lo as f64).ln(), (hi as f64).ln());
    let mut v: Vec<u64> = (0..points)
        .map(|i| (a + (b - a) * i as f64 / (points - 1) as f64).exp().round() as u64)
        .collect();
    v.dedup();
    v
}

pub fn log_spaced_u32(lo: u32, hi: u32, points: usize) -> Vec<u32> {
    log_spaced_u64(lo as u64, hi as u64, points)
        .into_iter()
        .map(|x| x as u32)
        .collect()
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::param(format!("{name} must be positive, got {v}")))
    }
}

fn non_negative(name: &str, v: f64) -> Result<()> {
    if v >= 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::param(format!("{name} must be non-negative, got {v}")))
    }
}

impl WyartBouchaudConfig {
    pub fn validate(&self) -> Result<()> {
        if !(1.0 < self.alpha && self.alpha < self.mu && self.mu < 2.0) {
            return Err(Error::param(format!(
                "wyart-bouchaud requires 1 < alpha < mu < 2, got alpha={} mu={}",
                self.alpha, self.mu
            )));
        }
        positive("sigma_unit", self.sigma_unit)?;
        if self.n_firms == 0 {
            return Err(Error::param("n_firms must be at least 1"));
        }
        if self.fixed_units == Some(0) {
            return Err(Error::param("fixed_units must be at least 1"));
        }
        Ok(())
    }
}

impl SimonConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.b) {
            return Err(Error::param(format!("entry probability b must lie in [0, 1], got {}", self.b)));
        }
        if self.n_steps == 0 {
            return Err(Error::param("n_steps must be at least 1"));
        }
        if self.b == 0.0 && self.n_seed_firms == 0 {
            return Err(Error::param(
                "b = 0 with an empty economy: no firm can ever be founded (set n_seed_firms)",
            ));
        }
        if self.n_steps + self.n_seed_firms > u32::MAX as u64 {
            return Err(Error::param("too many units for the arrival process"));
        }
        Ok(())
    }
}

impl GpgConfig {
    pub fn validate(&self) -> Result<()> {
        self.simon().validate()?;
        non_negative("unit_log_sd", self.unit_log_sd)?;
        non_negative("gibrat_log_sd", self.gibrat_log_sd)?;
        if self.measure_window == 0 {
            return Err(Error::param("measure_window must be at least 1"));
        }
        Ok(())
    }
}

impl PsiMixtureConfig {
    pub fn validate(&self) -> Result<()> {
        positive("lambda", self.lambda)?;
        positive("sigma", self.sigma)?;
        if !self.psi.is_finite() {
            return Err(Error::param("psi must be finite"));
        }
        if self.n_firms == 0 {
            return Err(Error::param("n_firms must be at least 1"));
        }
        Ok(())
    }
}

impl SuttonConfig {
    pub fn validate(&self) -> Result<()> {
        if self.size_grid.is_empty() {
            return Err(Error::param("size_grid must not be empty"));
        }
        if let Some(&s) = self.size_grid.iter().find(|&&s| !(1..=PARTITION_CEILING).contains(&s)) {
            return Err(Error::param(format!(
                "firm size {s} outside the partition sampler range 1..={PARTITION_CEILING}"
            )));
        }
        if self.samples_per_size == 0 {
            return Err(Error::param("samples_per_size must be at least 1"));
        }
        non_negative("unit_shock_sd", self.unit_shock_sd)?;
        Ok(())
    }
}

impl FasConfig {
    pub fn validate(&self) -> Result<()> {
        if let Replication::PowerLaw = self.replication {
            if !(1.0 < self.mu && self.mu < 2.0) {
                return Err(Error::param(format!("replication tail mu must lie in (1, 2), got {}", self.mu)));
            }
        }
        if self.k0_grid.is_empty() || self.k0_grid.contains(&0) {
            return Err(Error::param("k0_grid must be non-empty with entries >= 1"));
        }
        if self.n_periods == 0 || self.samples == 0 {
            return Err(Error::param("n_periods and samples must be at least 1"));
        }
        Ok(())
    }
}

impl ModelConfig {
    pub fn validate(&self) -> Result<()> {
        match self {
            ModelConfig::WyartBouchaud(c) => c.validate(),
            ModelConfig::Simon(c) => c.validate(),
            ModelConfig::Gpg(c) => c.validate(),
            ModelConfig::PsiMixture(c) => c.validate(),
            ModelConfig::Sutton(c) => c.validate(),
            ModelConfig::Fas(c) => c.validate(),
        }
    }

    /// Short name used on the command line.
    pub fn short_name(&self) -> &'static str {
        match self {
            ModelConfig::WyartBouchaud(_) => "wb",
            ModelConfig::Simon(_) => "simon",
            ModelConfig::Gpg(_) => "gpg",
            ModelConfig::PsiMixture(_) => "psi",
            ModelConfig::Sutton(_) => "sutton",
            ModelConfig::Fas(_) => "fas",
        }
    }

    /// Default configuration for a command-line model name.
    pub fn default_for(name: &str) -> Result<Self> {
        Ok(match name {
            "wb" | "wyart_bouchaud" => ModelConfig::WyartBouchaud(Default::default()),
            "simon" => ModelConfig::Simon(Default::default()),
            "gpg" => ModelConfig::Gpg(Default::default()),
            "psi" | "psi_mixture" => ModelConfig::PsiMixture(Default::default()),
            "sutton" => ModelConfig::Sutton(Default::default()),
            "fas" => ModelConfig::Fas(Default::default()),
            other => return Err(Error::param(format!("unknown model '{other}'"))),
        })
    }

    /// Serde tag of a command-line model name.
    pub fn kind_for(name: &str) -> Result<&'static str> {
        Ok(match name {
            "wb" | "wyart_bouchaud" => "wyart_bouchaud",
            "simon" => "simon",
            "gpg" => "gpg",
            "psi" | "psi_mixture" => "psi_mixture",
            "sutton" => "sutton",
            "fas" => "fas",
            other => return Err(Error::param(format!("unknown model '{other}'"))),
        })
    }

    pub fn seed(&self) -> u64 {
        match self {
            ModelConfig::WyartBouchaud(c) => c.seed,
            ModelConfig::Simon(c) => c.seed,
            ModelConfig::Gpg(c) => c.seed,
            ModelConfig::PsiMixture(c) => c.seed,
            ModelConfig::Sutton(c) => c.seed,
            ModelConfig::Fas(c) => c.seed,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        match &mut self {
            ModelConfig::WyartBouchaud(c) => c.seed = seed,
            ModelConfig::Simon(c) => c.seed = seed,
            ModelConfig::Gpg(c) => c.seed = seed,
            ModelConfig::PsiMixture(c) => c.seed = seed,
            ModelConfig::Sutton(c) => c.seed = seed,
            ModelConfig::Fas(c) => c.seed = seed,
        }
        self
    }

    /// Hex digest identifying this configuration, seed included.
    pub fn digest(&self) -> String {
        let json = serde_json::to_string(self).expect("model config serializes");
        let hash = Sha256::digest(json.as_bytes());
        hash.iter().take(12).map(|b| format!("{b:02x}")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regime_checks() {
        let mut wb = WyartBouchaudConfig::default();
        assert!(wb.validate().is_ok());
        wb.alpha = 1.5;
        assert!(wb.validate().is_err());
        let simon = SimonConfig {
            b: 0.0,
            n_seed_firms: 0,
            ..Default::default()
        };
        assert!(simon.validate().is_err());
        let fas = FasConfig {
            mu: 2.0,
            ..Default::default()
        };
        assert!(fas.validate().is_err());
        let sutton = SuttonConfig {
            size_grid: vec![PARTITION_CEILING + 1],
            ..Default::default()
        };
        assert!(sutton.validate().is_err());
        let psi = PsiMixtureConfig {
            lambda: 0.0,
            ..Default::default()
        };
        assert!(psi.validate().is_err());
    }

    #[test]
    fn digest_depends_on_seed() {
        let a = ModelConfig::WyartBouchaud(Default::default());
        let b = a.clone().with_seed(1);
        assert_ne!(a.digest(), b.digest());
        assert_eq!(a.digest(), a.clone().digest());
    }

    #[test]
    fn toml_round_trip() {
        let cfg = ModelConfig::Fas(FasConfig {
            k0_grid: vec![10, 100],
            ..Default::default()
        });
        let text = toml::to_string(&cfg).unwrap();
        let back: ModelConfig = toml::from_str(&text).unwrap();
        assert_eq!(cfg, back);
    }

    #[test]
    fn log_spacing() {
        let g = log_spaced_u64(100, 5000, 20);
        assert_eq!(g.first(), Some(&100));
        assert_eq!(g.last(), Some(&5000));
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }
}
