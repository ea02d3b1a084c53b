use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use super::{configure_threads, reproduce, run_experiment, selftest, ExperimentConfig, Figure};
use crate::error::{Error, Result};
use crate::models::ModelConfig;
use crate::oracle::{
    count_partitions_by_enumeration, enumerate_partitions, laplace_density, mixture_density_numeric,
    scaling_exponent_table, student2_density, ExponentParams, MixtureSpec, ENUMERATION_LIMIT,
};
use crate::randkit::shared_table;

/// Simulate compositional firm-growth models and verify their predictions.
///
/// Set GRANULAR_GROWTH_THREADS to cap the number of worker threads. Exit
/// status: 0 on success, 1 on parameter or usage errors, 2 on I/O errors.
#[derive(Debug, Parser)]
#[command(name = "granular-growth", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Simulate one model and write the requested analyses.
    Simulate {
        /// wb | simon | gpg | psi | sutton | fas
        model: String,
        /// TOML experiment file ([model] table, [[analyses]], seed, output_dir).
        #[arg(long)]
        config: Option<PathBuf>,
        /// Seed; overrides the file.
        #[arg(long)]
        seed: Option<u64>,
        /// Output directory; overrides the file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override one model parameter, e.g. `--set alpha=1.3` or `--set k0_grid=[10,100]`.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
    },
    /// Regenerate the data behind a figure.
    Reproduce {
        /// fig1-left | fig1-right
        figure: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print reference values.
    Oracle {
        #[command(subcommand)]
        what: OracleCommand,
    },
    /// Run the fast invariant suite.
    Selftest,
}

#[derive(Debug, Subcommand)]
enum OracleCommand {
    /// Exponential Gaussian-mixture density by quadrature, as CSV on stdout.
    Density {
        #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
        psi: f64,
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
        #[arg(long, default_value_t = 1.0)]
        sigma: f64,
        #[arg(long, default_value_t = -5.0, allow_hyphen_values = true)]
        min: f64,
        #[arg(long, default_value_t = 5.0, allow_hyphen_values = true)]
        max: f64,
        #[arg(long, default_value_t = 101)]
        points: usize,
    },
    /// Partition count by enumeration and by the sampler's table.
    Partitions {
        #[arg(long)]
        total: u32,
        /// Also print every partition (totals up to 60).
        #[arg(long)]
        list: bool,
    },
    /// Predicted scaling exponents for the given parameters.
    Exponents {
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        mu: Option<f64>,
        #[arg(long)]
        b: Option<f64>,
        #[arg(long)]
        fas_mu: Option<f64>,
    },
}

/// Parses `value` as a TOML literal, falling back to a bare string.
fn toml_value(value: &str) -> toml::Value {
    toml::from_str::<toml::Table>(&format!("v = {value}"))
        .ok()
        .and_then(|mut t| t.remove("v"))
        .unwrap_or_else(|| toml::Value::String(value.into()))
}

fn experiment_from_flags(
    model: &str,
    config: Option<PathBuf>,
    seed: Option<u64>,
    out: Option<PathBuf>,
    overrides: &[String],
) -> Result<ExperimentConfig> {
    let kind = ModelConfig::kind_for(model)?;
    let (mut table, path) = match &config {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Error::io(p, e))?;
            let t: toml::Table = toml::from_str(&text).map_err(|e| Error::Config {
                path: p.clone(),
                message: e.to_string(),
            })?;
            (t, p.clone())
        }
        None => (toml::Table::new(), PathBuf::from("<flags>")),
    };
    let model_table = table
        .entry("model")
        .or_insert_with(|| toml::Value::Table(toml::Table::new()))
        .as_table_mut()
        .ok_or_else(|| Error::Config { path: path.clone(), message: "`model` must be a table".into() })?;
    match model_table.get("kind").and_then(|v| v.as_str()) {
        Some(k) if k != kind => {
            return Err(Error::Config {
                path,
                message: format!("file describes model '{k}' but the command asked for '{kind}'"),
            })
        }
        _ => {
            model_table.insert("kind".into(), kind.into());
        }
    }
    for o in overrides {
        let (k, v) = o
            .split_once('=')
            .ok_or_else(|| Error::param(format!("--set expects KEY=VALUE, got '{o}'")))?;
        let k = k.trim().trim_start_matches("model.");
        model_table.insert(k.into(), toml_value(v.trim()));
    }
    if let Some(s) = seed {
        table.insert("seed".into(), toml::Value::Integer(s as i64));
    }
    table.entry("seed").or_insert(toml::Value::Integer(0));
    if let Some(o) = out {
        table.insert("output_dir".into(), o.to_string_lossy().into_owned().into());
    }
    if !table.contains_key("output_dir") {
        return Err(Error::param("no output directory: pass --out or set output_dir in the config"));
    }
    let text = toml::to_string(&table).map_err(|e| Error::Config { path: path.clone(), message: e.to_string() })?;
    ExperimentConfig::from_toml_str(&text).map_err(|e| match e {
        Error::Config { message, .. } => Error::Config { path, message },
        other => other,
    })
}

fn run(cli: Cli) -> Result<()> {
    configure_threads()?;
    match cli.command {
        Command::Simulate { model, config, seed, out, overrides } => {
            let cfg = experiment_from_flags(&model, config, seed, out, &overrides)?;
            let m = run_experiment(&cfg)?;
            for o in &m.outputs {
                println!("{}  {}", o.sha256, cfg.output_dir.join(&o.file).display());
            }
        }
        Command::Reproduce { figure, out, seed } => {
            let fig: Figure = figure.parse()?;
            let m = reproduce(fig, &out, seed)?;
            for o in &m.outputs {
                println!("{}  {}", o.sha256, out.join(&o.file).display());
            }
        }
        Command::Oracle { what } => oracle(what)?,
        Command::Selftest => {
            let checks = selftest();
            let failed = checks.iter().filter(|c| !c.passed).count();
            for c in &checks {
                println!("{} {} {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            if failed > 0 {
                return Err(Error::Numeric(format!("{failed} selftest checks failed")));
            }
        }
    }
    Ok(())
}

fn oracle(what: OracleCommand) -> Result<()> {
    match what {
        OracleCommand::Density { psi, lambda, sigma, min, max, points } => {
            if points < 2 || !(min < max) {
                return Err(Error::param("need points >= 2 and min < max"));
            }
            let spec = MixtureSpec::exponential(lambda, psi, sigma)?;
            let grid: Vec<f64> = (0..points)
                .map(|i| min + (max - min) * i as f64 / (points - 1) as f64)
                .collect();
            let curve = mixture_density_numeric(&spec, &grid)?;
            let closed = |g: f64| match psi {
                1.0 => Some(laplace_density(g, lambda, sigma)),
                -1.0 => Some(student2_density(g, lambda, sigma)),
                _ => None,
            };
            println!("g,quadrature,closed_form");
            for &(g, d) in curve.points() {
                let c = closed(g).map_or(String::new(), |c| format!("{c:.16e}"));
                println!("{g:.16e},{d:.16e},{c}");
            }
        }
        OracleCommand::Partitions { total, list } => {
            let table = shared_table(total)?;
            if total <= ENUMERATION_LIMIT {
                println!("enumerated {}", count_partitions_by_enumeration(total)?);
            }
            println!("table {}", table.count(total));
            if list {
                for p in enumerate_partitions(total)? {
                    let parts: Vec<String> = p.parts().iter().map(|x| x.to_string()).collect();
                    println!("({})", parts.join(","));
                }
            }
        }
        OracleCommand::Exponents { alpha, mu, b, fas_mu } => {
            let rows = scaling_exponent_table(&ExponentParams { alpha, mu, b, fas_mu })?;
            println!("name,formula,value,boundary");
            for r in rows {
                println!("{},{},{:.16e},{}", r.name, r.formula, r.value, r.boundary);
            }
        }
    }
    Ok(())
}

/// Entry point of the `granular-growth` binary; returns the exit status.
pub fn cli_main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
