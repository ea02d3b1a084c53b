use crate::error::Result;
use crate::models::{aggregate_growth, firm_volatility, simulate_wyart_bouchaud, FirmComposition, WyartBouchaudConfig};
use crate::oracle::{
    count_partitions_by_enumeration, laplace_density, mixture_density_at, student2_density, MixtureSpec,
};
use crate::randkit::{
    sample_pareto, sample_uniform_partition, shared_table, ParetoParams, RngStream, StreamDomain,
};
use crate::stats::{chi_square_uniform, effective_units, hill_estimator, ks_distance};

#[derive(Debug, Clone, PartialEq)]
pub struct SelftestCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, f: impl FnOnce() -> Result<(bool, String)>) -> SelftestCheck {
    match f() {
        Ok((passed, detail)) => SelftestCheck { name, passed, detail },
        Err(e) => SelftestCheck { name, passed: false, detail: e.to_string() },
    }
}

/// Fast invariant suite: exact identities plus small statistical checks at
/// loose thresholds. Takes a few seconds.
pub fn selftest() -> Vec<SelftestCheck> {
    let s = |i| RngStream::derived(0, StreamDomain::Selftest, i);
    vec![
        check("partition counts: table equals enumeration for totals <= 40", || {
            let t = shared_table(40)?;
            for n in 1..=40 {
                let e = count_partitions_by_enumeration(n)?;
                if t.count(n) != e as f64 {
                    return Ok((false, format!("p({n}): table {} enumeration {e}", t.count(n))));
                }
            }
            Ok((true, "40 totals".into()))
        }),
        check("partition sampler uniform over the 42 partitions of 10", || {
            let mut counts = std::collections::BTreeMap::new();
            for i in 0..8400 {
                *counts.entry(sample_uniform_partition(10, &s(i))?).or_insert(0u64) += 1;
            }
            let cells: Vec<u64> = counts.values().copied().collect();
            let (_, p) = chi_square_uniform(&cells)?;
            Ok((cells.len() == 42 && p > 1e-3, format!("{} cells, p = {p:.3}", cells.len())))
        }),
        check("aggregate growth reproduces the weighted-average examples", || {
            let c = FirmComposition::new(vec![3.0, 1.0])?;
            let r = aggregate_growth(&c, &[0.0, 0.4])?.pct_growth;
            let c2 = FirmComposition::new(vec![1.0, 1.0])?;
            let r2 = aggregate_growth(&c2, &[1.0, 0.0])?.pct_growth;
            Ok(((r - 0.1).abs() < 1e-15 && r2 == 0.5, format!("r = {r}, {r2}")))
        }),
        check("volatility identity sigma sqrt(H) and K_eff H = 1", || {
            let c = FirmComposition::new(vec![1.0, 2.0, 3.0])?;
            let v = firm_volatility(&c, 0.6)?;
            let prod = effective_units(&c) * c.herfindahl();
            Ok(((v - 0.6 * 14f64.sqrt() / 6.0).abs() < 1e-15 && (prod - 1.0).abs() <= 2.0 * f64::EPSILON, format!("{v}")))
        }),
        check("pareto sampler: Hill index near mu", || {
            let xs = sample_pareto(&ParetoParams::new(1.0, 1.4)?, 200_000, &s(100))?;
            let f = hill_estimator(&xs, 5000)?;
            Ok(((f.exponent - 1.4).abs() < 0.1, format!("{:.3}", f.exponent)))
        }),
        check("quadrature matches the psi = 1 and psi = -1 closed forms", || {
            let lap = MixtureSpec::exponential(1.3, 1.0, 0.7)?;
            let st = MixtureSpec::exponential(1.3, -1.0, 0.7)?;
            let mut worst: f64 = 0.0;
            for g in [0.0, 0.05, 0.5, 2.0, 8.0] {
                worst = worst
                    .max((mixture_density_at(&lap, g)? - laplace_density(g, 1.3, 0.7)).abs())
                    .max((mixture_density_at(&st, g)? - student2_density(g, 1.3, 0.7)).abs());
            }
            Ok((worst < 1e-8, format!("max abs error {worst:.1e}")))
        }),
        check("single-unit firms grow by exact Gaussians", || {
            let p = simulate_wyart_bouchaud(&WyartBouchaudConfig {
                n_firms: 20_000,
                fixed_units: Some(1),
                seed: 11,
                ..Default::default()
            })?;
            let d = ks_distance(&p.log_growths(), |g| crate::oracle::gaussian_cdf(g, 0.1))?;
            Ok((d < 0.02, format!("KS {d:.4}")))
        }),
        check("samplers are pure functions of their stream", || {
            let p = ParetoParams::new(2.0, 1.1)?;
            Ok((sample_pareto(&p, 1000, &s(7))? == sample_pareto(&p, 1000, &s(7))?, String::new()))
        }),
    ]
}
