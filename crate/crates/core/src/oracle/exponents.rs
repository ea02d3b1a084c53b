use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Model parameters feeding [`scaling_exponent_table`]. Absent parameters
/// skip the rows that need them.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ExponentParams {
    /// Unit-count tail exponent of the Wyart–Bouchaud model.
    pub alpha: Option<f64>,
    /// Unit-size tail exponent of the Wyart–Bouchaud model.
    pub mu: Option<f64>,
    /// Entry probability of the arrival process.
    pub b: Option<f64>,
    /// Replication tail exponent of the branching model.
    pub fas_mu: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExponentRow {
    pub name: String,
    pub formula: String,
    pub value: f64,
    /// Parameters sit on the edge of the formula's validity range.
    pub boundary: bool,
}

fn row(name: &str, formula: &str, value: f64, boundary: bool) -> ExponentRow {
    ExponentRow {
        name: name.into(),
        formula: formula.into(),
        value,
        boundary,
    }
}

/// `Ok(boundary?)` when `v` is in `[1, 2]`.
fn in_one_two(name: &str, v: f64) -> Result<bool> {
    if !(1.0..=2.0).contains(&v) {
        return Err(Error::Regime(format!("{name} = {v} outside [1, 2]")));
    }
    Ok(v == 1.0 || v == 2.0)
}

/// Every predicted exponent the parameters allow, as pure formula evaluations.
pub fn scaling_exponent_table(p: &ExponentParams) -> Result<Vec<ExponentRow>> {
    let mut rows = Vec::new();
    if let Some(mu) = p.mu {
        let edge = in_one_two("mu", mu)?;
        rows.push(row("herfindahl_typical_slope", "2(1-mu)/mu", 2.0 * (1.0 - mu) / mu, edge));
        rows.push(row("herfindahl_mean_slope", "1-mu", 1.0 - mu, edge));
        rows.push(row("herfindahl_tail_index", "mu/2", mu / 2.0, edge));
        rows.push(row("growth_tail_index", "mu", mu, edge));
        rows.push(row("mean_volatility_slope", "(mu-1)/mu", (mu - 1.0) / mu, edge));
    }
    if let Some(alpha) = p.alpha {
        let edge = in_one_two("alpha", alpha)?;
        rows.push(row("size_tail_index", "alpha", alpha, edge));
        if let Some(mu) = p.mu {
            if alpha > mu {
                return Err(Error::Regime(format!("need alpha <= mu, got alpha={alpha} mu={mu}")));
            }
            rows.push(row("rms_volatility_slope", "(alpha-mu)/2", (alpha - mu) / 2.0, edge || alpha == mu));
        }
    }
    if let Some(b) = p.b {
        if !(0.0..1.0).contains(&b) {
            return Err(Error::Regime(format!("phi = 2 + b/(1-b) needs 0 <= b < 1, got {b}")));
        }
        rows.push(row("unit_count_density_exponent", "2+b/(1-b)", 2.0 + b / (1.0 - b), b == 0.0));
    }
    rows.push(row("sutton_variance_slope", "-1/2", -0.5, false));
    rows.push(row("sutton_volatility_slope", "-1/4", -0.25, false));
    if let Some(mu) = p.fas_mu {
        let edge = in_one_two("fas_mu", mu)?;
        rows.push(row("fas_volatility_slope", "(1-mu)/mu", (1.0 - mu) / mu, edge));
    }
    Ok(rows)
}

/// Looks up a row by name.
pub fn exponent(rows: &[ExponentRow], name: &str) -> Option<f64> {
    rows.iter().find(|r| r.name == name).map(|r| r.value)
}
