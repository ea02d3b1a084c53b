use std::sync::Arc;

use rand::Rng;
use rand_distr::Distribution;

use crate::error::{Error, Result};

/// Default last support point held in the exact inverse-CDF table.
pub const DEFAULT_TABLE_CUTOFF: u64 = 1_000_000;

const GUIDE_BUCKETS: usize = 1 << 16;

/// Integer power law `P(K = k) ∝ k^(-1-alpha)` for `k >= kmin`.
///
/// Probabilities up to `cutoff` come from an exact normalized table searched
/// by inversion (with a guide table for O(1) expected lookups). Beyond the
/// cutoff the law continues analytically: a continuous Pareto variate on
/// `[cutoff + 1/2, inf)` is rounded to the nearest integer, which assigns
/// `k` the mass `((k - 1/2)^-alpha - (k + 1/2)^-alpha) / alpha`, equal to
/// `k^(-1-alpha)` up to a relative `O(k^-2)` term (below 1e-12 at the default
/// cutoff). Cloning is cheap; the tables are shared.
#[derive(Debug, Clone)]
pub struct DiscretePowerLaw {
    alpha: f64,
    kmin: u64,
    cutoff: u64,
    norm: f64,
    tail_prob: f64,
    cdf: Arc<[f64]>,
    guide: Arc<[u32]>,
}

impl DiscretePowerLaw {
    pub fn new(alpha: f64, kmin: u64) -> Result<Self> {
        Self::with_cutoff(alpha, kmin, DEFAULT_TABLE_CUTOFF.max(kmin))
    }

    pub fn with_cutoff(alpha: f64, kmin: u64, cutoff: u64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::param(format!("power-law alpha must be positive, got {alpha}")));
        }
        if kmin < 1 {
            return Err(Error::param("power-law kmin must be at least 1"));
        }
        if cutoff < kmin {
            return Err(Error::param(format!("table cutoff {cutoff} is below kmin {kmin}")));
        }
        if cutoff - kmin >= u32::MAX as u64 {
            return Err(Error::param("table cutoff too large"));
        }
        let len = (cutoff - kmin + 1) as usize;
        let weights: Vec<f64> = (0..len)
            .map(|i| ((kmin + i as u64) as f64).powf(-1.0 - alpha))
            .collect();
        // Smallest terms first keeps the sum accurate.
        let body: f64 = weights.iter().rev().sum();
        let tail = (cutoff as f64 + 0.5).powf(-alpha) / alpha;
        let norm = body + tail;

        let mut cdf = Vec::with_capacity(len);
        let mut acc = 0.0;
        for w in &weights {
            acc += w;
            cdf.push(acc / norm);
        }
        let tail_prob = tail / norm;

        let buckets = GUIDE_BUCKETS.min(len);
        let mut guide = Vec::with_capacity(buckets);
        let mut i = 0usize;
        for b in 0..buckets {
            let u = b as f64 / buckets as f64;
            while i + 1 < len && cdf[i] <= u {
                i += 1;
            }
            guide.push(i as u32);
        }

        Ok(Self {
            alpha,
            kmin,
            cutoff,
            norm,
            tail_prob,
            cdf: cdf.into(),
            guide: guide.into(),
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn kmin(&self) -> u64 {
        self.kmin
    }

    pub fn cutoff(&self) -> u64 {
        self.cutoff
    }

    /// Coefficient `c` in `P(K = k) ≈ c k^(-1-alpha)`.
    pub fn tail_coefficient(&self) -> f64 {
        1.0 / self.norm
    }

    pub fn pmf(&self, k: u64) -> f64 {
        if k < self.kmin {
            0.0
        } else if k <= self.cutoff {
            (k as f64).powf(-1.0 - self.alpha) / self.norm
        } else {
            let kf = k as f64;
            ((kf - 0.5).powf(-self.alpha) - (kf + 0.5).powf(-self.alpha)) / (self.alpha * self.norm)
        }
    }

    /// Mean of the implemented law (tail continuation included); infinite for `alpha <= 1`.
    pub fn mean(&self) -> f64 {
        if self.alpha <= 1.0 {
            return f64::INFINITY;
        }
        let body: f64 = (self.kmin..=self.cutoff)
            .rev()
            .map(|k| (k as f64).powf(-self.alpha))
            .sum::<f64>()
            / self.norm;
        let x0 = self.cutoff as f64 + 0.5;
        body + self.tail_prob * x0 * self.alpha / (self.alpha - 1.0)
    }

    #[inline]
    fn from_uniform(&self, u: f64) -> u64 {
        let last = self.cdf.len() - 1;
        if u < self.cdf[last] {
            let b = ((u * self.guide.len() as f64) as usize).min(self.guide.len() - 1);
            let mut i = self.guide[b] as usize;
            while self.cdf[i] <= u {
                i += 1;
            }
            self.kmin + i as u64
        } else {
            let v = ((1.0 - u) / self.tail_prob).clamp(f64::MIN_POSITIVE, 1.0);
            let y = (self.cutoff as f64 + 0.5) * v.powf(-1.0 / self.alpha);
            let k = (y + 0.5).floor();
            if k >= u64::MAX as f64 {
                u64::MAX
            } else {
                (k as u64).max(self.cutoff + 1)
            }
        }
    }
}

impl Distribution<u64> for DiscretePowerLaw {
    #[inline]
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        self.from_uniform(rng.gen::<f64>())
    }
}

/// Geometric law on `{0, 1, 2, ...}` with the given mean: the discrete
/// Bose–Einstein occupancy, `P(k) = p (1-p)^k` with `p = 1 / (1 + mean)`.
#[derive(Debug, Clone, Copy)]
pub struct Geometric {
    mean: f64,
    ln_q: f64,
}

impl Geometric {
    pub fn new(mean: f64) -> Result<Self> {
        if !(mean > 0.0 && mean.is_finite()) {
            return Err(Error::param(format!("geometric mean must be positive, got {mean}")));
        }
        // ln(mean / (1 + mean)) without cancellation for small means.
        let ln_q = mean.ln() - mean.ln_1p();
        Ok(Self { mean, ln_q })
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn pmf(&self, k: u64) -> f64 {
        let p = 1.0 / (1.0 + self.mean);
        p * (k as f64 * self.ln_q).exp()
    }

    /// `P(K >= k)`.
    pub fn survival(&self, k: u64) -> f64 {
        (k as f64 * self.ln_q).exp()
    }
}

impl Distribution<u64> for Geometric {
    #[inline]
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        let u = 1.0 - rng.gen::<f64>();
        let k = (u.ln() / self.ln_q).floor();
        if k >= u64::MAX as f64 {
            u64::MAX
        } else {
            k as u64
        }
    }
}
