use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::output::{Cell, Table};
use crate::error::{Error, Result};
use crate::models::{rescaled_growth, stable_limit, GrowthPanel, ModelConfig, SimulationOutput};
use crate::oracle::stable_reference_quantiles;
use crate::randkit::Geometric;
use crate::stats::{
    default_hill_k, fit_loglog_points, fit_loglog_slope, hill_estimator,
    kde_density, kde_density_on, ks_distance_discrete, quantiles, size_volatility_curve_with,
    silverman_bandwidth, Bandwidth, CurveOptions, DensityCurve, FitResult, GrowthMeasure,
    Statistic,
};

/// Which tail the tail analysis looks at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Upper,
    Lower,
    #[default]
    Abs,
}

/// Quantity whose tail is estimated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum TailVariable {
    #[default]
    Growth,
    Size,
    UnitCount,
}

fn default_grid() -> usize {
    512
}
fn default_bins() -> usize {
    20
}
fn default_reference_draws() -> usize {
    10_000_000
}

/// One requested analysis. Each writes `<name>.csv`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Analysis {
    /// Gaussian KDE of the growth rates. Columns `g, density`.
    Density {
        #[serde(default = "default_grid")]
        grid_size: usize,
    },
    /// Growth dispersion per log size bin. Columns `size, count, mean_abs, rms, sd`;
    /// `statistic` picks the headline slope in the summary.
    SizeVolatility {
        #[serde(default = "rms")]
        statistic: Statistic,
        #[serde(default = "default_bins")]
        n_bins: usize,
        #[serde(default)]
        measure: GrowthMeasure,
        #[serde(default)]
        exact_sizes: bool,
    },
    /// Hill estimates over a sweep of order-statistic counts. Columns `k, exponent, stderr`.
    Tail {
        #[serde(default)]
        side: Side,
        #[serde(default)]
        variable: TailVariable,
    },
    /// Median and mean Herfindahl per unit-count bin. Columns `unit_count, count, median_h, mean_h`.
    HerfindahlScaling {
        #[serde(default = "default_bins")]
        n_bins: usize,
    },
    /// Quantiles of rescaled branching growth against the stable limit.
    /// Columns `quantile_level, empirical, stable_reference`.
    QqStable {
        #[serde(default = "default_reference_draws")]
        reference_draws: usize,
        /// Initial unit count whose records are used; the largest on the grid by default.
        #[serde(default)]
        k0: Option<u64>,
    },
    /// Histogram of unit counts with a fitted geometric reference.
    /// Columns `unit_count, firms, frequency, geometric_fit`.
    UnitCountHist,
}

fn rms() -> Statistic {
    Statistic::Rms
}

impl Analysis {
    pub fn file_stem(&self) -> String {
        match self {
            Analysis::Density { .. } => "density".into(),
            Analysis::SizeVolatility { .. } => "size_volatility".into(),
            Analysis::Tail { side, variable } => match (variable, side) {
                (TailVariable::Growth, Side::Abs) => "tail".into(),
                (TailVariable::Growth, s) => format!("tail_{}", side_name(*s)),
                (v, Side::Abs) => format!("tail_{}", variable_name(*v)),
                (v, s) => format!("tail_{}_{}", variable_name(*v), side_name(*s)),
            },
            Analysis::HerfindahlScaling { .. } => "herfindahl_scaling".into(),
            Analysis::QqStable { .. } => "qq".into(),
            Analysis::UnitCountHist => "unit_count_hist".into(),
        }
    }
}

fn side_name(s: Side) -> &'static str {
    match s {
        Side::Upper => "upper",
        Side::Lower => "lower",
        Side::Abs => "abs",
    }
}

fn variable_name(v: TailVariable) -> &'static str {
    match v {
        TailVariable::Growth => "growth",
        TailVariable::Size => "size",
        TailVariable::UnitCount => "unit_count",
    }
}

fn fit_json(f: &FitResult) -> Value {
    json!({
        "exponent": f.exponent,
        "stderr": f.stderr,
        "n_points": f.n_points,
        "range": [f.range.0, f.range.1],
    })
}

fn need_panel<'a>(out: &'a SimulationOutput, what: &str) -> Result<&'a GrowthPanel> {
    out.panel()
        .ok_or_else(|| Error::param(format!("{what} analysis needs a growth panel; this model only yields unit counts")))
}

/// Growth rates used for densities and tails: log growth, or percent growth
/// when the panel has extinction records.
pub(crate) fn growth_values(panel: &GrowthPanel) -> Vec<f64> {
    if panel.records().iter().any(|r| r.is_extinction()) {
        panel.pct_growths()
    } else {
        panel.log_growths()
    }
}

const MAX_GRID: usize = 20_000;

/// Full-range KDE when a grid of at most `MAX_GRID` points resolves the
/// bandwidth; otherwise the central 99.8% window.
pub(crate) fn density_curve(g: &[f64], grid_size: usize) -> Result<(DensityCurve, bool)> {
    let h = silverman_bandwidth(g)?;
    let lo = g.iter().copied().fold(f64::INFINITY, f64::min) - 4.0 * h;
    let hi = g.iter().copied().fold(f64::NEG_INFINITY, f64::max) + 4.0 * h;
    let needed = ((hi - lo) / h).ceil() as usize + 1;
    if needed <= MAX_GRID {
        Ok((kde_density(g, Bandwidth::Fixed(h), grid_size.max(needed))?, true))
    } else {
        let q = quantiles(g, &[0.001, 0.999])?;
        Ok((kde_density_on(g, Bandwidth::Fixed(h), q[0], q[1], grid_size)?, false))
    }
}

fn density(out: &SimulationOutput, grid_size: usize) -> Result<(Table, Value)> {
    let g = growth_values(need_panel(out, "density")?);
    let (curve, full) = density_curve(&g, grid_size)?;
    let mut t = Table::new(vec!["g", "density"]);
    for &(x, d) in curve.points() {
        t.push(vec![Cell::F(x), Cell::F(d)]);
    }
    let summary = json!({
        "samples": g.len(),
        "grid_points": curve.len(),
        "full_range": full,
        "integral": curve.integral(),
    });
    Ok((t, summary))
}

/// Slopes over the whole curve and over the bins inside the central 80% of the log-size range.
fn slopes(centers: &[f64], values: &[f64]) -> Value {
    let full = fit_loglog_points(centers, values);
    let central = if centers.len() >= 3 {
        let (a, b) = (centers[0].ln(), centers[centers.len() - 1].ln());
        let (lo, hi) = ((a + 0.1 * (b - a)).exp(), (b - 0.1 * (b - a)).exp());
        let (xs, ys): (Vec<f64>, Vec<f64>) = centers
            .iter()
            .zip(values)
            .filter(|(c, _)| **c >= lo && **c <= hi)
            .map(|(c, v)| (*c, *v))
            .unzip();
        fit_loglog_points(&xs, &ys)
    } else {
        Err(Error::InsufficientData("too few bins".into()))
    };
    let show = |r: Result<FitResult>| match r {
        Ok(f) => fit_json(&f),
        Err(e) => json!({ "error": e.to_string() }),
    };
    json!({ "full_range": show(full), "central_80": show(central) })
}

fn size_volatility(out: &SimulationOutput, statistic: Statistic, n_bins: usize, measure: GrowthMeasure, exact_sizes: bool) -> Result<(Table, Value)> {
    let panel = need_panel(out, "size_volatility")?;
    let curve_for = |s: Statistic| {
        size_volatility_curve_with(
            panel,
            &CurveOptions {
                n_bins,
                statistic: s,
                measure,
                exact_sizes,
                ..Default::default()
            },
        )
    };
    let stats = [Statistic::MeanAbs, Statistic::Rms, Statistic::Sd];
    let curves = stats.iter().map(|&s| curve_for(s)).collect::<Result<Vec<_>>>()?;
    let mut t = Table::new(vec!["size", "count", "mean_abs", "rms", "sd"]);
    for i in 0..curves[0].len() {
        let p = curves[0].points()[i];
        t.push(vec![
            Cell::F(p.center),
            Cell::U(p.count as u64),
            Cell::F(curves[0].points()[i].value),
            Cell::F(curves[1].points()[i].value),
            Cell::F(curves[2].points()[i].value),
        ]);
    }
    let mut by_stat = serde_json::Map::new();
    for (s, c) in stats.iter().zip(&curves) {
        by_stat.insert(s.name().into(), slopes(&c.centers(), &c.values()));
    }
    let headline = fit_loglog_slope(&curves[stats.iter().position(|&s| s == statistic).expect("listed")]);
    let mut summary = json!({
        "statistic": statistic.name(),
        "bins": curves[0].len(),
        "slopes": by_stat,
    });
    if let Ok(f) = headline {
        summary["headline_slope"] = json!(f.exponent);
        summary["headline_slope_magnitude"] = json!(f.exponent.abs());
        summary["decays_slower_than_inverse_sqrt"] = json!(f.exponent > -0.5);
    }
    Ok((t, summary))
}

fn tail(out: &SimulationOutput, side: Side, variable: TailVariable) -> Result<(Table, Value)> {
    let raw: Vec<f64> = match variable {
        TailVariable::Growth => growth_values(need_panel(out, "tail")?),
        TailVariable::Size => need_panel(out, "tail")?.sizes(),
        TailVariable::UnitCount => out.unit_counts().iter().map(|&k| k as f64).collect(),
    };
    let xs: Vec<f64> = raw
        .iter()
        .map(|&x| match side {
            Side::Upper => x,
            Side::Lower => -x,
            Side::Abs => x.abs(),
        })
        .filter(|&x| x > 0.0)
        .collect();
    let n = xs.len();
    let k0 = default_hill_k(n);
    let mut t = Table::new(vec!["k", "exponent", "stderr"]);
    let mut k = 10usize;
    while k < n {
        let f = hill_estimator(&xs, k)?;
        t.push(vec![Cell::U(k as u64), Cell::F(f.exponent), Cell::F(f.stderr)]);
        k = ((k as f64) * 1.25).ceil() as usize;
    }
    let at = |k: usize| hill_estimator(&xs, k.clamp(10, n.saturating_sub(1))).map(|f| fit_json(&f));
    let summary = json!({
        "samples": n,
        "default_k": k0,
        "hill": at(k0)?,
        "hill_half_k": at(k0 / 2)?,
        "hill_double_k": at(2 * k0)?,
    });
    Ok((t, summary))
}

fn herfindahl_scaling(out: &SimulationOutput, n_bins: usize) -> Result<(Table, Value)> {
    let panel = need_panel(out, "herfindahl_scaling")?;
    let mut pairs: Vec<(u64, f64)> = panel.records().iter().map(|r| (r.unit_count, r.herfindahl)).collect();
    pairs.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)));
    let distinct = {
        let mut d: Vec<u64> = pairs.iter().map(|p| p.0).collect();
        d.dedup();
        d
    };
    // Exact unit counts when there are few of them, log bins otherwise.
    let key = |k: u64| -> f64 {
        if distinct.len() <= n_bins {
            k as f64
        } else {
            let (lo, hi) = ((distinct[0] as f64).ln(), (distinct[distinct.len() - 1] as f64).ln());
            let w = (hi - lo) / n_bins as f64;
            ((((k as f64).ln() - lo) / w) as usize).min(n_bins - 1) as f64
        }
    };
    let mut groups: Vec<(f64, f64, Vec<f64>)> = Vec::new();
    for (k, h) in pairs {
        let b = key(k);
        match groups.last_mut() {
            Some((bk, sum_lk, hs)) if *bk == b => {
                *sum_lk += (k as f64).ln();
                hs.push(h);
            }
            _ => groups.push((b, (k as f64).ln(), vec![h])),
        }
    }
    let mut t = Table::new(vec!["unit_count", "count", "median_h", "mean_h"]);
    let (mut ks, mut meds, mut means) = (Vec::new(), Vec::new(), Vec::new());
    for (_, sum_lk, mut hs) in groups.into_iter().filter(|g| g.2.len() >= 30) {
        let n = hs.len();
        let center = (sum_lk / n as f64).exp();
        hs.sort_by(|a, b| a.total_cmp(b));
        let med = crate::stats::quantile_sorted(&hs, 0.5);
        let mean = hs.iter().sum::<f64>() / n as f64;
        t.push(vec![Cell::F(center), Cell::U(n as u64), Cell::F(med), Cell::F(mean)]);
        ks.push(center);
        meds.push(med);
        means.push(mean);
    }
    let show = |r: Result<FitResult>| match r {
        Ok(f) => fit_json(&f),
        Err(e) => json!({ "error": e.to_string() }),
    };
    let summary = json!({
        "bins": ks.len(),
        "median_slope": show(fit_loglog_points(&ks, &meds)),
        "mean_slope": show(fit_loglog_points(&ks, &means)),
    });
    Ok((t, summary))
}

/// Levels 0.01, 0.02, ..., 0.99.
pub fn qq_levels() -> Vec<f64> {
    (1..=99).map(|i| i as f64 / 100.0).collect()
}

fn qq_stable(out: &SimulationOutput, model: &ModelConfig, reference_draws: usize, k0: Option<u64>) -> Result<(Table, Value)> {
    let ModelConfig::Fas(cfg) = model else {
        return Err(Error::param("qq_stable analysis applies to the fas model only"));
    };
    let panel = need_panel(out, "qq_stable")?;
    let k0 = k0.unwrap_or_else(|| *cfg.k0_grid.iter().max().expect("validated"));
    let x = rescaled_growth(panel, cfg.mu, k0);
    if x.len() < 100 {
        return Err(Error::InsufficientData(format!("only {} records start from k0 = {k0}", x.len())));
    }
    let params = stable_limit(cfg.mu)?;
    let levels = qq_levels();
    let emp = quantiles(&x, &levels)?;
    let reference = stable_reference_quantiles(&params, &levels, reference_draws, cfg.seed)?;
    let mut t = Table::new(vec!["quantile_level", "empirical", "stable_reference"]);
    let mut worst: f64 = 0.0;
    for ((&l, &e), &r) in levels.iter().zip(&emp).zip(&reference) {
        t.push(vec![Cell::F(l), Cell::F(e), Cell::F(r)]);
        worst = worst.max((e - r).abs() / r.abs().max(params.scale()));
    }
    let summary = json!({
        "k0": k0,
        "samples": x.len(),
        "stable_alpha": params.alpha(),
        "stable_beta": params.beta(),
        "stable_scale": params.scale(),
        "reference_draws": reference_draws,
        "max_relative_deviation": worst,
    });
    Ok((t, summary))
}

fn unit_count_hist(out: &SimulationOutput) -> Result<(Table, Value)> {
    let ks = out.unit_counts();
    if ks.is_empty() {
        return Err(Error::InsufficientData("no firms".into()));
    }
    let kmin = *ks.iter().min().expect("non-empty");
    let n = ks.len() as f64;
    let shifted: Vec<u64> = ks.iter().map(|k| k - kmin).collect();
    let mean_excess = shifted.iter().sum::<u64>() as f64 / n;
    let fit = if mean_excess > 0.0 { Some(Geometric::new(mean_excess)?) } else { None };
    let ks_stat = match &fit {
        Some(geo) => ks_distance_discrete(&shifted, |k| 1.0 - geo.survival(k + 1))?,
        None => 0.0,
    };
    let kmax = *ks.iter().max().expect("non-empty");
    let mut counts = std::collections::BTreeMap::new();
    for &k in &ks {
        *counts.entry(k).or_insert(0u64) += 1;
    }
    let mut t = Table::new(vec!["unit_count", "firms", "frequency", "geometric_fit"]);
    for (&k, &c) in &counts {
        let fitted = fit.as_ref().map_or((k == kmin) as u8 as f64, |g| g.pmf(k - kmin));
        t.push(vec![Cell::U(k), Cell::U(c), Cell::F(c as f64 / n), Cell::F(fitted)]);
    }
    let summary = json!({
        "firms": ks.len(),
        "min_unit_count": kmin,
        "max_unit_count": kmax,
        "mean_unit_count": ks.iter().sum::<u64>() as f64 / n,
        "exponential_fit": {
            "rate": if mean_excess > 0.0 { (1.0 + 1.0 / mean_excess).ln() } else { f64::INFINITY },
            "mean_excess": mean_excess,
            "ks": ks_stat,
        },
    });
    Ok((t, summary))
}

pub(crate) fn run_analysis(a: &Analysis, out: &SimulationOutput, model: &ModelConfig) -> Result<(Table, Value)> {
    match *a {
        Analysis::Density { grid_size } => density(out, grid_size),
        Analysis::SizeVolatility { statistic, n_bins, measure, exact_sizes } => {
            size_volatility(out, statistic, n_bins, measure, exact_sizes)
        }
        Analysis::Tail { side, variable } => tail(out, side, variable),
        Analysis::HerfindahlScaling { n_bins } => herfindahl_scaling(out, n_bins),
        Analysis::QqStable { reference_draws, k0 } => qq_stable(out, model, reference_draws, k0),
        Analysis::UnitCountHist => unit_count_hist(out),
    }
}

/// Analyses run when a config names none.
pub fn default_analyses(model: &ModelConfig) -> Vec<Analysis> {
    let density = Analysis::Density { grid_size: default_grid() };
    let sv = |statistic, exact_sizes, measure| Analysis::SizeVolatility {
        statistic,
        n_bins: default_bins(),
        measure,
        exact_sizes,
    };
    let tail = Analysis::Tail { side: Side::Abs, variable: TailVariable::Growth };
    match model {
        ModelConfig::WyartBouchaud(_) => vec![
            density,
            sv(Statistic::Rms, false, GrowthMeasure::Log),
            tail,
            Analysis::HerfindahlScaling { n_bins: default_bins() },
        ],
        ModelConfig::Simon(_) => vec![
            Analysis::UnitCountHist,
            Analysis::Tail { side: Side::Abs, variable: TailVariable::UnitCount },
        ],
        ModelConfig::Gpg(_) => vec![density, tail, Analysis::UnitCountHist],
        ModelConfig::PsiMixture(_) => vec![density, tail],
        ModelConfig::Sutton(_) => vec![density, sv(Statistic::Sd, true, GrowthMeasure::Pct)],
        // Growth has infinite variance here; mean |r| is the statistic that scales.
        ModelConfig::Fas(_) => vec![
            sv(Statistic::MeanAbs, true, GrowthMeasure::Pct),
            Analysis::QqStable { reference_draws: default_reference_draws(), k0: None },
        ],
    }
}

