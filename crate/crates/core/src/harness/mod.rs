//! Config-driven experiment runner and the `granular-growth` command line.
//!
//! A run simulates one model, runs each requested analysis, and writes one
//! CSV per analysis, `summary.json` with fitted numbers, and
//! `manifest.json` with the config echo, timestamps and SHA-256 checksums of
//! every other file. CSV bytes depend only on the config and seed.

mod analysis;
mod cli;
mod output;
mod selftest;

pub use analysis::{default_analyses, qq_levels, Analysis, Side, TailVariable};
pub use cli::cli_main;
pub use output::{sha256_hex, Cell, Table};
pub use selftest::{selftest, SelftestCheck};

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::models::{simulate, GpgConfig, ModelConfig, WyartBouchaudConfig};
use crate::oracle::student2_density;
use crate::stats::Statistic;

pub(crate) use analysis::{density_curve, growth_values};

pub const TOOL_NAME: &str = "granular-growth";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Environment variable capping the worker-thread count.
pub const THREADS_ENV: &str = "GRANULAR_GROWTH_THREADS";

/// What to simulate, what to measure, and where to put it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub model: ModelConfig,
    #[serde(default)]
    pub analyses: Vec<Analysis>,
    pub output_dir: PathBuf,
    /// Replaces the model's own seed.
    pub seed: u64,
}

impl ExperimentConfig {
    /// Reads a TOML experiment file. Missing `analyses` get the model defaults.
    pub fn from_toml_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&text).map_err(|e| match e {
            Error::Config { message, .. } => Error::Config { path: path.into(), message },
            other => other,
        })
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let mut cfg: Self = toml::from_str(text).map_err(|e| Error::Config {
            path: PathBuf::from("<string>"),
            message: e.to_string(),
        })?;
        if cfg.analyses.is_empty() {
            cfg.analyses = default_analyses(&cfg.model);
        }
        Ok(cfg)
    }

    /// The model config with the experiment seed applied.
    pub fn seeded_model(&self) -> ModelConfig {
        self.model.clone().with_seed(self.seed)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputFile {
    pub file: String,
    pub bytes: u64,
    pub sha256: String,
}

/// Record of one run, written as `manifest.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub config: Value,
    pub config_digest: String,
    pub seed: u64,
    pub started_at: String,
    pub finished_at: String,
    pub outputs: Vec<OutputFile>,
}

impl RunManifest {
    pub fn checksum(&self, file: &str) -> Option<&str> {
        self.outputs.iter().find(|o| o.file == file).map(|o| o.sha256.as_str())
    }
}

fn now() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Millis, true)
}

struct Writer<'a> {
    dir: &'a Path,
    outputs: Vec<OutputFile>,
}

impl Writer<'_> {
    fn write(&mut self, file: &str, bytes: &[u8]) -> Result<()> {
        if self.outputs.iter().any(|o| o.file == file) {
            return Err(Error::param(format!("two outputs named {file}")));
        }
        output::write_bytes(&self.dir.join(file), bytes)?;
        self.outputs.push(OutputFile {
            file: file.into(),
            bytes: bytes.len() as u64,
            sha256: sha256_hex(bytes),
        });
        Ok(())
    }
}

fn unique_stem(stem: String, used: &mut BTreeMap<String, usize>) -> String {
    let n = used.entry(stem.clone()).or_insert(0);
    *n += 1;
    if *n == 1 {
        stem
    } else {
        format!("{stem}_{n}")
    }
}

/// Runs one experiment; see the module docs for the files written.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<RunManifest> {
    run_with_extras(cfg, |_, _| Ok(Vec::new()), json!({}))
}

type Extra = (String, Vec<u8>);

fn run_with_extras<F>(cfg: &ExperimentConfig, extras: F, notes: Value) -> Result<RunManifest>
where
    F: FnOnce(&crate::models::SimulationOutput, &ModelConfig) -> Result<Vec<Extra>>,
{
    let started_at = now();
    if cfg.analyses.is_empty() {
        return Err(Error::param("an experiment needs at least one analysis"));
    }
    let model = cfg.seeded_model();
    model.validate().map_err(|e| e.context("model config"))?;
    fs::create_dir_all(&cfg.output_dir).map_err(|e| Error::io(&cfg.output_dir, e))?;

    let out = simulate(&model)?;
    let mut w = Writer { dir: &cfg.output_dir, outputs: Vec::new() };
    let mut summary = serde_json::Map::new();
    let mut used = BTreeMap::new();
    for a in &cfg.analyses {
        let (table, s) = analysis::run_analysis(a, &out, &model)
            .map_err(|e| e.context(&format!("{} analysis", a.file_stem())))?;
        let stem = unique_stem(a.file_stem(), &mut used);
        w.write(&format!("{stem}.csv"), &table.to_csv_bytes()?)?;
        summary.insert(stem, s);
    }
    for (file, bytes) in extras(&out, &model)? {
        w.write(&file, &bytes)?;
    }
    let summary = json!({
        "model": model.short_name(),
        "config_digest": model.digest(),
        "notes": notes,
        "analyses": summary,
    });
    let text = serde_json::to_string_pretty(&summary).map_err(|e| Error::Numeric(e.to_string()))? + "\n";
    w.write("summary.json", text.as_bytes())?;

    let manifest = RunManifest {
        tool: TOOL_NAME.into(),
        version: TOOL_VERSION.into(),
        config: serde_json::to_value(cfg).map_err(|e| Error::Numeric(e.to_string()))?,
        config_digest: model.digest(),
        seed: cfg.seed,
        started_at,
        finished_at: now(),
        outputs: w.outputs,
    };
    let text = serde_json::to_string_pretty(&manifest).map_err(|e| Error::Numeric(e.to_string()))? + "\n";
    output::write_bytes(&cfg.output_dir.join("manifest.json"), text.as_bytes())?;
    Ok(manifest)
}

/// Figures the harness can regenerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Figure {
    /// Power-law units and unit counts: growth density, size–volatility curve, tails.
    Fig1Left,
    /// Proportional growth without entry: growth density and unit-count histogram.
    Fig1Right,
}

impl std::str::FromStr for Figure {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fig1-left" | "fig1_left" => Ok(Figure::Fig1Left),
            "fig1-right" | "fig1_right" => Ok(Figure::Fig1Right),
            other => Err(Error::param(format!("unknown figure '{other}' (fig1-left | fig1-right)"))),
        }
    }
}

/// Experiment behind a figure.
pub fn figure_config(figure: Figure, output_dir: &Path, seed: u64) -> ExperimentConfig {
    let (model, analyses) = match figure {
        Figure::Fig1Left => (
            ModelConfig::WyartBouchaud(WyartBouchaudConfig::default()),
            vec![
                Analysis::Density { grid_size: 512 },
                Analysis::SizeVolatility {
                    statistic: Statistic::Rms,
                    n_bins: 20,
                    measure: Default::default(),
                    exact_sizes: false,
                },
                Analysis::Tail { side: Side::Abs, variable: TailVariable::Growth },
                Analysis::Tail { side: Side::Abs, variable: TailVariable::Size },
            ],
        ),
        Figure::Fig1Right => (
            ModelConfig::Gpg(GpgConfig::default()),
            vec![Analysis::Density { grid_size: 512 }, Analysis::UnitCountHist],
        ),
    };
    ExperimentConfig {
        model,
        analyses,
        output_dir: output_dir.into(),
        seed,
    }
}

/// Regenerates a figure's data. The right panel also writes
/// `mixture_reference.csv`: the exponential-mixture density with variance
/// proportional to `1/K`, matched to the run's mean unit count and unit
/// dispersion, on the density grid.
pub fn reproduce(figure: Figure, output_dir: &Path, seed: u64) -> Result<RunManifest> {
    let cfg = figure_config(figure, output_dir, seed);
    match figure {
        Figure::Fig1Left => run_with_extras(
            &cfg,
            |_, _| Ok(Vec::new()),
            json!({ "size_volatility": "magnitude of the rms slope is the reported quantity; compare with S^-1/2" }),
        ),
        Figure::Fig1Right => run_with_extras(
            &cfg,
            |out, model| {
                let ModelConfig::Gpg(g) = model else { unreachable!() };
                let panel = out.panel().expect("gpg yields a panel");
                let ks = panel.unit_counts();
                let lambda = ks.len() as f64 / ks.iter().sum::<u64>() as f64;
                // Mean Herfindahl of log-normal units is about exp(s^2) / K.
                let sigma = g.gibrat_log_sd * (g.measure_window as f64).sqrt() * (0.5 * g.unit_log_sd.powi(2)).exp();
                let (curve, _) = density_curve(&growth_values(panel), 512)?;
                let mut t = Table::new(vec!["g", "density"]);
                for x in curve.grid() {
                    t.push(vec![Cell::F(x), Cell::F(student2_density(x, lambda, sigma))]);
                }
                Ok(vec![("mixture_reference.csv".into(), t.to_csv_bytes()?)])
            },
            json!({ "mixture_reference": "psi = -1 exponential mixture for visual comparison; the tent centre is not asserted" }),
        ),
    }
}

/// Caps rayon's global pool at `GRANULAR_GROWTH_THREADS` when set. Only the
/// first call in a process has an effect.
pub fn configure_threads() -> Result<()> {
    let Ok(v) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| Error::param(format!("{THREADS_ENV} must be a positive integer, got '{v}'")))?;
    // Fails only if the pool already exists, which is fine.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}
