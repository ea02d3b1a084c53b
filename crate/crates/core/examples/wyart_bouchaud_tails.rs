//! Growth and size tails of the Wyart–Bouchaud model.
//!
//! cargo run --release --example wyart_bouchaud_tails

use granular_growth::models::{simulate_wyart_bouchaud, WyartBouchaudConfig};
use granular_growth::stats::{hill_plateau, size_volatility_curve, fit_loglog_slope, Statistic};

fn main() -> granular_growth::Result<()> {
    let cfg = WyartBouchaudConfig { alpha: 1.2, mu: 1.4, n_firms: 100_000, seed: 1, ..Default::default() };
    let panel = simulate_wyart_bouchaud(&cfg)?;

    let abs_g: Vec<f64> = panel.log_growths().iter().map(|g| g.abs()).collect();
    for (label, xs) in [("|g|", abs_g), ("S", panel.sizes())] {
        let [a, b, c] = hill_plateau(&xs)?;
        println!("Hill {label:>3}: {:.3} {:.3} {:.3}  (k = {}, {}, {})", a.exponent, b.exponent, c.exponent, a.n_points, b.n_points, c.n_points);
    }

    let curve = size_volatility_curve(&panel, 20, Statistic::Rms)?;
    for p in curve.points() {
        println!("S {:>12.1}  rms {:.4}  n {}", p.center, p.value, p.count);
    }
    println!("rms slope {:.3}", fit_loglog_slope(&curve)?.exponent);
    Ok(())
}
