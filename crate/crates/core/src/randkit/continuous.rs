use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Pareto law with survival function `(xmin / x)^mu` for `x >= xmin`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParetoParams {
    xmin: f64,
    mu: f64,
}

impl ParetoParams {
    pub fn new(xmin: f64, mu: f64) -> Result<Self> {
        if !(xmin > 0.0 && xmin.is_finite()) {
            return Err(Error::param(format!("pareto xmin must be positive, got {xmin}")));
        }
        if !(mu > 0.0 && mu.is_finite()) {
            return Err(Error::param(format!("pareto mu must be positive, got {mu}")));
        }
        Ok(Self { xmin, mu })
    }

    pub fn xmin(&self) -> f64 {
        self.xmin
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// Inverse transform of a deviate `u` in `(0, 1]`; `u = 1` maps to `xmin`.
    #[inline]
    pub fn from_uniform(&self, u: f64) -> f64 {
        self.xmin * u.powf(-1.0 / self.mu)
    }

    pub fn survival(&self, x: f64) -> f64 {
        if x <= self.xmin {
            1.0
        } else {
            (self.xmin / x).powf(self.mu)
        }
    }

    pub fn median(&self) -> f64 {
        self.xmin * 2f64.powf(1.0 / self.mu)
    }
}

impl Distribution<f64> for ParetoParams {
    #[inline]
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        // gen() is in [0, 1); flip to (0, 1] so the boundary maps to xmin.
        let u = 1.0 - rng.gen::<f64>();
        self.from_uniform(u)
    }
}

/// `exp(N(log_mean, log_sd^2))`.
#[derive(Debug, Clone, Copy)]
pub struct LogNormal {
    inner: Normal<f64>,
}

impl LogNormal {
    pub fn new(log_mean: f64, log_sd: f64) -> Result<Self> {
        if !(log_sd > 0.0 && log_sd.is_finite()) {
            return Err(Error::param(format!("log-normal log_sd must be positive, got {log_sd}")));
        }
        if !log_mean.is_finite() {
            return Err(Error::param("log-normal log_mean must be finite"));
        }
        let inner = Normal::new(log_mean, log_sd).map_err(|e| Error::param(e.to_string()))?;
        Ok(Self { inner })
    }
}

impl Distribution<f64> for LogNormal {
    #[inline]
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        self.inner.sample(rng).exp()
    }
}
