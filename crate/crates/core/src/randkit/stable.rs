//! Lévy alpha-stable variates by the Chambers–Mallows–Stuck construction.
//!
//! Parameterization is the S1 form (Samorodnitsky–Taqqu), used everywhere in
//! this crate including the reference quantiles of the oracle code. For
//! `alpha != 1` the characteristic function is
//!
//! ```text
//! E exp(itX) = exp(-scale^a |t|^a (1 - i beta sgn(t) tan(pi a / 2)) + i location t)
//! ```
//!
//! and for `alpha == 1`
//!
//! ```text
//! E exp(itX) = exp(-scale |t| (1 + i beta (2/pi) sgn(t) ln|t|) + i location t).
//! ```
//!
//! With this convention `alpha = 2` is Gaussian with variance `2 scale^2`
//! (beta is ignored), `alpha = 1, beta = 0` is Cauchy with the given scale, and
//! for `alpha > 1` the location is the mean.

use std::f64::consts::{FRAC_PI_2, PI};

use rand::Rng;
use rand_distr::{Distribution, Exp1};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StableParams {
    alpha: f64,
    beta: f64,
    scale: f64,
    location: f64,
}

impl StableParams {
    pub fn new(alpha: f64, beta: f64, scale: f64, location: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 2.0) {
            return Err(Error::param(format!("stable alpha must lie in (0, 2], got {alpha}")));
        }
        if !(-1.0..=1.0).contains(&beta) {
            return Err(Error::param(format!("stable beta must lie in [-1, 1], got {beta}")));
        }
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::param(format!("stable scale must be positive, got {scale}")));
        }
        if !location.is_finite() {
            return Err(Error::param("stable location must be finite"));
        }
        Ok(Self {
            alpha,
            beta,
            scale,
            location,
        })
    }

    /// Standardized law: unit scale, zero location.
    pub fn standard(alpha: f64, beta: f64) -> Result<Self> {
        Self::new(alpha, beta, 1.0, 0.0)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn location(&self) -> f64 {
        self.location
    }

    /// Map one (angle, exponential) pair to a standardized S1 variate.
    fn standard_variate(&self, v: f64, w: f64) -> f64 {
        let a = self.alpha;
        if a == 2.0 {
            return 2.0 * v.sin() * w.sqrt();
        }
        if a == 1.0 {
            let b = self.beta;
            let t = FRAC_PI_2 + b * v;
            return (t * v.tan() - b * (FRAC_PI_2 * w * v.cos() / t).ln()) / FRAC_PI_2;
        }
        let zeta = -self.beta * (PI * a / 2.0).tan();
        let xi = (-zeta).atan() / a;
        let s = (1.0 + zeta * zeta).powf(1.0 / (2.0 * a));
        let arg = a * (v + xi);
        s * arg.sin() / v.cos().powf(1.0 / a) * ((v - arg).cos() / w).powf((1.0 - a) / a)
    }
}

impl Distribution<f64> for StableParams {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let v = loop {
            let v = PI * (rng.gen::<f64>() - 0.5);
            if v > -FRAC_PI_2 {
                break v;
            }
        };
        let w: f64 = Exp1.sample(rng);
        let x = self.standard_variate(v, w);
        if self.alpha == 1.0 {
            self.scale * x
                + self.beta * self.scale * self.scale.ln() / FRAC_PI_2
                + self.location
        } else {
            self.scale * x + self.location
        }
    }
}
