//! Median and mean Herfindahl index against the unit count K.

use granular_growth::models::{simulate_wyart_bouchaud, WyartBouchaudConfig};
use granular_growth::oracle::{exponent, scaling_exponent_table, ExponentParams};
use granular_growth::stats::{fit_loglog_points, quantile_sorted};

fn main() -> granular_growth::Result<()> {
    let mu = 1.4;
    let (mut ks, mut med, mut mean) = (vec![], vec![], vec![]);
    for k in [10u64, 100, 1000, 10_000] {
        let cfg = WyartBouchaudConfig { mu, n_firms: 10_000, fixed_units: Some(k), seed: k, ..Default::default() };
        let mut h = simulate_wyart_bouchaud(&cfg)?.herfindahls();
        h.sort_by(|a, b| a.total_cmp(b));
        let m = h.iter().sum::<f64>() / h.len() as f64;
        println!("K {k:>6}  median H {:.3e}  mean H {m:.3e}", quantile_sorted(&h, 0.5));
        ks.push(k as f64);
        med.push(quantile_sorted(&h, 0.5));
        mean.push(m);
    }
    let rows = scaling_exponent_table(&ExponentParams { mu: Some(mu), ..Default::default() })?;
    println!(
        "median slope {:.3} (predicted {:.3})",
        fit_loglog_points(&ks, &med)?.exponent,
        exponent(&rows, "herfindahl_typical_slope").unwrap()
    );
    println!(
        "mean slope   {:.3} (predicted {:.3})",
        fit_loglog_points(&ks, &mean)?.exponent,
        exponent(&rows, "herfindahl_mean_slope").unwrap()
    );
    Ok(())
}
