use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Unit sizes of one firm. Size, unit count and Herfindahl index are derived.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FirmComposition {
    units: Vec<f64>,
}

impl FirmComposition {
    pub fn new(units: Vec<f64>) -> Result<Self> {
        if units.is_empty() {
            return Err(Error::param("a firm needs at least one unit"));
        }
        if let Some(bad) = units.iter().find(|x| !(**x > 0.0 && x.is_finite())) {
            return Err(Error::param(format!("unit sizes must be positive and finite, got {bad}")));
        }
        Ok(Self { units })
    }

    /// `n` units of size 1.
    pub fn equal(n: usize) -> Result<Self> {
        Self::new(vec![1.0; n])
    }

    pub fn units(&self) -> &[f64] {
        &self.units
    }

    pub fn size(&self) -> f64 {
        self.units.iter().sum()
    }

    pub fn unit_count(&self) -> usize {
        self.units.len()
    }

    /// Sum of squared size shares, in `[1/K, 1]`.
    pub fn herfindahl(&self) -> f64 {
        let k = self.units.len() as f64;
        let first = self.units[0];
        if self.units.iter().all(|&x| x == first) {
            return 1.0 / k;
        }
        let s = self.size();
        let q: f64 = self.units.iter().map(|x| x * x).sum();
        // Rounding can push the bounds by an ulp.
        (q / (s * s)).clamp(1.0 / k, 1.0)
    }
}

/// One firm over one period.
///
/// `pct_growth = exp(log_growth) - 1`. `log_growth` is `None` only for an
/// extinction record (size falls to zero, `pct_growth = -1`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrowthRecord {
    pub firm_id: u64,
    pub period: u32,
    pub size_before: f64,
    pub size_after: f64,
    pub log_growth: Option<f64>,
    pub pct_growth: f64,
    pub unit_count: u64,
    pub herfindahl: f64,
}

impl GrowthRecord {
    /// Record from a log growth rate; `size_after` and `pct_growth` follow from it.
    pub fn from_log_growth(size_before: f64, log_growth: f64, unit_count: u64, herfindahl: f64) -> Self {
        Self {
            firm_id: 0,
            period: 0,
            size_before,
            size_after: size_before * log_growth.exp(),
            log_growth: Some(log_growth),
            pct_growth: log_growth.exp_m1(),
            unit_count,
            herfindahl,
        }
    }

    /// Record from a percent growth rate `> -1`, or the extinction record when it equals `-1`.
    pub fn from_pct_growth(size_before: f64, pct_growth: f64, unit_count: u64, herfindahl: f64) -> Self {
        let log_growth = (pct_growth > -1.0).then(|| pct_growth.ln_1p());
        Self {
            firm_id: 0,
            period: 0,
            size_before,
            size_after: size_before * (1.0 + pct_growth),
            log_growth,
            pct_growth,
            unit_count,
            herfindahl,
        }
    }

    pub fn with_ids(mut self, firm_id: u64, period: u32) -> Self {
        self.firm_id = firm_id;
        self.period = period;
        self
    }

    pub fn is_extinction(&self) -> bool {
        self.log_growth.is_none()
    }
}

/// All records produced by one simulation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthPanel {
    records: Vec<GrowthRecord>,
    config_digest: String,
}

impl GrowthPanel {
    pub fn new(records: Vec<GrowthRecord>, config_digest: impl Into<String>) -> Result<Self> {
        if records.is_empty() {
            return Err(Error::InsufficientData("a growth panel needs at least one record".into()));
        }
        let mut seen = HashSet::with_capacity(records.len());
        for r in &records {
            if !seen.insert((r.firm_id, r.period)) {
                return Err(Error::Shape(format!(
                    "duplicate record for firm {} period {}",
                    r.firm_id, r.period
                )));
            }
        }
        Ok(Self {
            records,
            config_digest: config_digest.into(),
        })
    }

    pub fn records(&self) -> &[GrowthRecord] {
        &self.records
    }

    pub fn config_digest(&self) -> &str {
        &self.config_digest
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Log growth rates, extinction records skipped.
    pub fn log_growths(&self) -> Vec<f64> {
        self.records.iter().filter_map(|r| r.log_growth).collect()
    }

    pub fn pct_growths(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.pct_growth).collect()
    }

    pub fn sizes(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.size_before).collect()
    }

    pub fn herfindahls(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.herfindahl).collect()
    }

    pub fn unit_counts(&self) -> Vec<u64> {
        self.records.iter().map(|r| r.unit_count).collect()
    }
}
