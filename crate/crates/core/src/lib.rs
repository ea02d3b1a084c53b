//! Monte Carlo simulation and statistical verification for compositional
//! models of firm growth.
//!
//! A firm is a collection of units; its size is the sum of unit sizes and
//! its growth is the share-weighted average of unit growth. Different
//! assumptions about how many units a firm has and how large they are lead
//! to different growth-rate distributions (scale mixtures of Gaussians) and
//! to anomalous size–volatility scaling. The crate provides:
//!
//! - [`randkit`]: seedable samplers (Pareto, log-normal, stable, integer
//!   power law, geometric, uniform integer partitions).
//! - [`models`]: generators for the Wyart–Bouchaud, Simon / proportional
//!   growth, exponential ψ-mixture, Sutton partition and
//!   Farmer–Axtell–Schwarzkopf branching models.
//! - [`stats`]: Hill tail estimation, log-log slopes, binned size–volatility
//!   curves, Gaussian KDE, Kolmogorov–Smirnov distance and kurtosis.
//! - [`oracle`]: quadrature and closed-form references plus exhaustive
//!   partition enumeration used to check the samplers and models.
//! - [`harness`]: config-driven experiment runner writing CSV and a JSON
//!   manifest, and the `granular-growth` command line.

pub mod error;
pub mod harness;
pub mod models;
pub mod oracle;
pub mod randkit;
pub mod stats;

pub use error::{Error, Result};
