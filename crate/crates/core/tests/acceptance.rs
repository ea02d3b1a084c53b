//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fail.
//!
//! Run with `cargo test --test acceptance`. Each criterion also checks its
//! wall-clock budget.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::{Duration, Instant};

use granular_growth::harness::{reproduce, Figure};
use granular_growth::models::{
    log_spaced_u32, log_spaced_u64, rescaled_growth, simulate_fas, simulate_gpg, simulate_psi_mixture,
    simulate_simon, simulate_sutton, simulate_wyart_bouchaud, stable_limit, FasConfig, GpgConfig,
    PsiMixtureConfig, ShockKind, SimonConfig, SuttonConfig, WyartBouchaudConfig,
};
use granular_growth::oracle::{
    cauchy_cdf, count_partitions_by_enumeration, exponent, gaussian_cdf, laplace_cdf,
    laplace_density, mixture_density_at, mixture_ks_distance, scaling_exponent_table,
    stable_reference_quantiles, student2_cdf, student2_density, ExponentParams, ExponentRow,
    MixtureSpec,
};
use granular_growth::randkit::{
    partition_numbers_exact, sample_stable, sample_uniform_partition, shared_table, Geometric,
    RngStream, StableParams,
};
use granular_growth::stats::{
    chi_square_uniform, default_hill_k, excess_kurtosis, fit_loglog_points, fit_loglog_slope, hill_estimator,
    ks_distance, ks_distance_discrete, quantile_sorted, quantiles, size_volatility_curve,
    size_volatility_curve_with, variance, CurveOptions, GrowthMeasure, Statistic,
};
use num_bigint::BigUint;

struct Check {
    what: String,
    pass: bool,
}

struct Criterion {
    id: &'static str,
    started: Instant,
    checks: Vec<Check>,
}

impl Criterion {
    fn new(id: &'static str) -> Self {
        Self { id, started: Instant::now(), checks: Vec::new() }
    }

    fn within(&mut self, what: &str, value: f64, target: f64, tol: f64) {
        self.checks.push(Check {
            what: format!("{what} = {value:.4} (target {target:.4} ± {tol})"),
            pass: (value - target).abs() <= tol,
        });
    }

    fn below(&mut self, what: &str, value: f64, limit: f64) {
        self.checks.push(Check { what: format!("{what} = {value:.5} (< {limit})"), pass: value < limit });
    }

    fn above(&mut self, what: &str, value: f64, limit: f64) {
        self.checks.push(Check { what: format!("{what} = {value:.5} (> {limit})"), pass: value > limit });
    }

    fn holds(&mut self, what: &str, pass: bool) {
        self.checks.push(Check { what: what.into(), pass });
    }

    /// Hill estimates at k/2, k and 2k must all fall inside the band.
    fn hill_plateau(&mut self, what: &str, xs: &[f64], target: f64, tol: f64, map: impl Fn(f64) -> f64) {
        let n = xs.iter().filter(|&&x| x > 0.0).count();
        let k = default_hill_k(n);
        for kk in [k / 2, k, 2 * k] {
            match hill_estimator(xs, kk) {
                Ok(f) => self.within(&format!("{what} [k={kk}]"), map(f.exponent), target, tol),
                Err(e) => self.holds(&format!("{what} [k={kk}] failed: {e}"), false),
            }
        }
    }

    fn budget(&mut self, limit: Duration) {
        let t = self.started.elapsed();
        self.checks.push(Check {
            what: format!("runtime {:.1}s (< {}s)", t.as_secs_f64(), limit.as_secs()),
            pass: t < limit,
        });
    }

    fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    fn report(&self) {
        println!("{} {}", if self.passed() { "PASS" } else { "FAIL" }, self.id);
        for c in &self.checks {
            println!("    [{}] {}", if c.pass { "ok" } else { "x" }, c.what);
        }
    }
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn table(p: ExponentParams) -> Vec<ExponentRow> {
    scaling_exponent_table(&p).expect("exponent table")
}

fn wb(started: Instant) -> Vec<Criterion> {
    let panel = simulate_wyart_bouchaud(&WyartBouchaudConfig { seed: 1, ..Default::default() }).unwrap();
    let rows = table(ExponentParams { alpha: Some(1.2), mu: Some(1.4), ..Default::default() });

    let mut c1 = Criterion::new("C1 WB growth tail: Hill of |g| = mu");
    c1.started = started;
    let abs_g: Vec<f64> = panel.log_growths().iter().map(|g| g.abs()).collect();
    c1.hill_plateau("Hill |g|", &abs_g, exponent(&rows, "growth_tail_index").unwrap(), 0.15, |e| e);
    c1.budget(secs(60));

    let mut c2 = Criterion::new("C2 WB firm-size tail: Hill of S = alpha");
    c2.started = started;
    c2.hill_plateau("Hill S", &panel.sizes(), exponent(&rows, "size_tail_index").unwrap(), 0.15, |e| e);
    c2.budget(secs(60));

    let mut c3 = Criterion::new("C3 WB size-volatility: |rms slope| = |alpha-mu|/2, slower than S^-1/2");
    c3.started = started;
    let target = exponent(&rows, "rms_volatility_slope").unwrap().abs();
    let curve = size_volatility_curve(&panel, 20, Statistic::Rms).unwrap();
    let f = fit_loglog_points(&curve.centers(), &curve.values()).unwrap();
    c3.within("|rms slope|", f.exponent.abs(), target, 0.05);
    c3.above("rms slope (must exceed -1/2)", f.exponent, -0.5);
    c3.budget(secs(60));
    vec![c1, c2, c3]
}

fn c4() -> Criterion {
    let mut c = Criterion::new("C4 Herfindahl scaling at fixed K (mu = 1.4)");
    let mu = 1.4;
    let rows = table(ExponentParams { mu: Some(mu), ..Default::default() });
    let (mut ks, mut meds, mut means) = (Vec::new(), Vec::new(), Vec::new());
    let mut largest = Vec::new();
    for k in [10u64, 100, 1000, 10_000] {
        let p = simulate_wyart_bouchaud(&WyartBouchaudConfig {
            mu,
            n_firms: 10_000,
            fixed_units: Some(k),
            seed: 40 + k,
            ..Default::default()
        })
        .unwrap();
        let mut h = p.herfindahls();
        h.sort_by(|a, b| a.total_cmp(b));
        ks.push(k as f64);
        meds.push(quantile_sorted(&h, 0.5));
        means.push(h.iter().sum::<f64>() / h.len() as f64);
        largest = h;
    }
    let med = fit_loglog_points(&ks, &meds).unwrap();
    let mean = fit_loglog_points(&ks, &means).unwrap();
    c.within("median H slope", med.exponent, exponent(&rows, "herfindahl_typical_slope").unwrap(), 0.1);
    c.within("mean H slope", mean.exponent, exponent(&rows, "herfindahl_mean_slope").unwrap(), 0.1);
    // Intermediate region at K = 10^4: order statistics above 10 H_typ.
    let h_typ = quantile_sorted(&largest, 0.5);
    let k_region = largest.iter().filter(|&&h| h > 10.0 * h_typ).count();
    match hill_estimator(&largest, k_region) {
        Ok(f) => c.within(
            &format!("Hill of H above 10 H_typ (k={k_region})"),
            f.exponent,
            exponent(&rows, "herfindahl_tail_index").unwrap(),
            0.1,
        ),
        Err(e) => c.holds(&format!("Hill of H: {e}"), false),
    }
    c.budget(secs(120));
    c
}

fn c5() -> Criterion {
    let mut c = Criterion::new("C5 Simon process: phi = 2 + b/(1-b); exponential at b = 0");
    let phi = exponent(&table(ExponentParams { b: Some(0.1), ..Default::default() }), "unit_count_density_exponent").unwrap();
    let k = simulate_simon(&SimonConfig { b: 0.1, n_steps: 1_000_000, n_seed_firms: 0, seed: 5 }).unwrap();
    let kf: Vec<f64> = k.iter().map(|&x| x as f64).collect();
    // Density exponent is one more than the Hill (survival) index.
    c.hill_plateau("1 + Hill of K", &kf, phi, 0.2, |e| 1.0 + e);

    let k0 = simulate_simon(&SimonConfig { b: 0.0, n_steps: 1_000_000, n_seed_firms: 10_000, seed: 6 }).unwrap();
    let excess: Vec<u64> = k0.iter().map(|&x| x - 1).collect();
    let m = excess.iter().sum::<u64>() as f64 / excess.len() as f64;
    let geo = Geometric::new(m).unwrap();
    let d = ks_distance_discrete(&excess, |x| 1.0 - geo.survival(x + 1)).unwrap();
    c.below("KS of K-1 vs fitted exponential (geometric)", d, 0.02);
    c.budget(secs(60));
    c
}

fn c6() -> Criterion {
    let mut c = Criterion::new("C6 GPG b = 0 growth tail: density exponent 3, excess kurtosis > 0.5");
    let p = simulate_gpg(&GpgConfig { seed: 8, ..Default::default() }).unwrap();
    let g = p.log_growths();
    let abs_g: Vec<f64> = g.iter().map(|x| x.abs()).collect();
    c.hill_plateau("1 + Hill of |g|", &abs_g, 3.0, 0.3, |e| 1.0 + e);
    c.above("excess kurtosis of g", excess_kurtosis(&g).unwrap(), 0.5);
    c.budget(secs(120));
    c
}

fn psi_growth(psi: f64, seed: u64) -> Vec<f64> {
    simulate_psi_mixture(&PsiMixtureConfig { psi, lambda: 1.0, sigma: 1.0, n_firms: 1_000_000, seed })
        .unwrap()
        .log_growths()
}

fn c7() -> Criterion {
    let mut c = Criterion::new("C7 psi-mixture family at n = 10^6");
    c.below("psi = 0: KS vs Gaussian", ks_distance(&psi_growth(0.0, 70), |g| gaussian_cdf(g, 1.0)).unwrap(), 0.005);
    c.below("psi = 1: KS vs Laplace", ks_distance(&psi_growth(1.0, 71), |g| laplace_cdf(g, 1.0, 1.0)).unwrap(), 0.005);
    c.below("psi = -1: KS vs closed form", ks_distance(&psi_growth(-1.0, 72), |g| student2_cdf(g, 1.0, 1.0)).unwrap(), 0.005);
    let abs_g: Vec<f64> = psi_growth(-2.0, 73).iter().map(|g| g.abs()).collect();
    c.hill_plateau("psi = -2: 1 + Hill of |g|", &abs_g, 2.0, 0.2, |e| 1.0 + e);
    c.budget(secs(60));
    c
}

fn c8() -> Criterion {
    let mut c = Criterion::new("C8 oracle agreement: closed form, quadrature, sampling");
    let mut worst: f64 = 0.0;
    for &(lambda, sigma) in &[(1.0, 1.0), (0.5, 2.0), (3.0, 0.2)] {
        let lap = MixtureSpec::exponential(lambda, 1.0, sigma).unwrap();
        let st = MixtureSpec::exponential(lambda, -1.0, sigma).unwrap();
        for i in 0..=200 {
            let g = -10.0 + 0.1 * i as f64;
            worst = worst
                .max((mixture_density_at(&lap, g).unwrap() - laplace_density(g, lambda, sigma)).abs())
                .max((mixture_density_at(&st, g).unwrap() - student2_density(g, lambda, sigma)).abs());
        }
    }
    c.below("max |quadrature - closed form| density", worst, 1e-8);
    for (psi, seed) in [(1.0, 81), (-1.0, 82), (-2.0, 83), (0.5, 84)] {
        let spec = MixtureSpec::exponential(1.0, psi, 1.0).unwrap();
        let d = mixture_ks_distance(&spec, &psi_growth(psi, seed), 4001).unwrap();
        c.below(&format!("psi = {psi}: KS of samples vs quadrature CDF"), d, 0.005);
    }
    c.budget(secs(120));
    c
}

fn c9() -> Criterion {
    let mut c = Criterion::new("C9 partition sampler uniformity and exact counts");
    let mut counts = BTreeMap::new();
    for i in 0..42_000u64 {
        *counts.entry(sample_uniform_partition(10, &RngStream::new(9, i)).unwrap()).or_insert(0u64) += 1;
    }
    let cells: Vec<u64> = counts.values().copied().collect();
    c.holds(&format!("{} distinct partitions of 10 observed (expect 42)", cells.len()), cells.len() == 42);
    let (stat, p) = chi_square_uniform(&cells).unwrap();
    c.above(&format!("chi-square p-value (stat {stat:.1}, 41 dof)"), p, 0.001);
    let dp = shared_table(60).unwrap();
    let exact = partition_numbers_exact(60);
    let mut agree = true;
    for n in 1..=60u32 {
        let e = count_partitions_by_enumeration(n).unwrap();
        agree &= dp.count(n) == e as f64 && exact[n as usize] == BigUint::from(e);
    }
    c.holds("DP table, exact recurrence and enumeration agree for every total <= 60", agree);
    c.budget(secs(60));
    c
}

fn c10() -> Criterion {
    let mut c = Criterion::new("C10 Sutton partitions: Var(r|S) ~ S^-1/2, slow kurtosis decay");
    let p = simulate_sutton(&SuttonConfig {
        size_grid: log_spaced_u32(100, 5000, 20),
        samples_per_size: 2000,
        seed: 10,
        ..Default::default()
    })
    .unwrap();
    let curve = size_volatility_curve_with(
        &p,
        &CurveOptions { statistic: Statistic::Sd, measure: GrowthMeasure::Pct, exact_sizes: true, ..Default::default() },
    )
    .unwrap();
    let var: Vec<f64> = curve.values().iter().map(|s| s * s).collect();
    let f = fit_loglog_points(&curve.centers(), &var).unwrap();
    c.within("slope of log Var(r|S)", f.exponent, -0.5, 0.07);

    let sizes = [100u32, 1000, 5000];
    let lap = simulate_sutton(&SuttonConfig {
        size_grid: sizes.to_vec(),
        samples_per_size: 20_000,
        unit_shock_kind: ShockKind::Laplace,
        seed: 11,
        ..Default::default()
    })
    .unwrap();
    let kurt: Vec<f64> = sizes
        .iter()
        .map(|&s| {
            let r: Vec<f64> = lap
                .records()
                .iter()
                .filter(|x| x.size_before == s as f64)
                .map(|x| x.pct_growth)
                .collect();
            let sd = variance(&r).sqrt();
            let z: Vec<f64> = r.iter().map(|x| x / sd).collect();
            excess_kurtosis(&z).unwrap()
        })
        .collect();
    c.holds(
        &format!("kurtosis decreasing: {:.3} > {:.3} > {:.3} at S = 100, 1000, 5000", kurt[0], kurt[1], kurt[2]),
        kurt[0] > kurt[1] && kurt[1] > kurt[2],
    );
    c.above("excess kurtosis at S = 5000", kurt[2], 0.05);
    c.budget(secs(180));
    c
}

fn c11() -> Criterion {
    let mut c = Criterion::new("C11 FAS branching: volatility slope (1-mu)/mu, stable limit");
    let mu = 1.5;
    let target = exponent(&table(ExponentParams { fas_mu: Some(mu), ..Default::default() }), "fas_volatility_slope").unwrap();
    let p = simulate_fas(&FasConfig { mu, k0_grid: log_spaced_u64(30, 10_000, 120), samples: 400, seed: 12, ..Default::default() }).unwrap();
    // r has infinite variance, so the rms does not settle; mean |r| carries the scaling.
    let slope = |statistic| {
        let opts = CurveOptions { statistic, measure: GrowthMeasure::Pct, exact_sizes: true, ..Default::default() };
        fit_loglog_slope(&size_volatility_curve_with(&p, &opts).unwrap()).unwrap().exponent
    };
    let rms = slope(Statistic::Rms);
    c.within(&format!("slope of mean |r| vs K (rms slope {rms:.3})"), slope(Statistic::MeanAbs), target, 0.05);

    let k0 = 10_000;
    let q = simulate_fas(&FasConfig { mu, k0_grid: vec![k0], samples: 100_000, seed: 13, ..Default::default() }).unwrap();
    let x = rescaled_growth(&q, mu, k0);
    let params = stable_limit(mu).unwrap();
    let levels: Vec<f64> = (1..=99).map(|i| i as f64 / 100.0).collect();
    let emp = quantiles(&x, &levels).unwrap();
    let reference = stable_reference_quantiles(&params, &levels, 10_000_000, 14).unwrap();
    // Relative to max(|q|, scale): the quantiles cross zero near the median.
    let worst = emp
        .iter()
        .zip(&reference)
        .map(|(e, r)| (e - r).abs() / r.abs().max(params.scale()))
        .fold(0.0, f64::max);
    c.below("max relative Q-Q deviation over quantiles 0.01..0.99", worst, 0.05);
    c.budget(secs(120));
    c
}

fn c12() -> Criterion {
    let mut c = Criterion::new("C12 stable sampler: alpha = 2 Gaussian, alpha = 1 Cauchy");
    let g = sample_stable(&StableParams::standard(2.0, 0.0).unwrap(), 1_000_000, &RngStream::new(12, 0)).unwrap();
    c.below("alpha = 2: KS vs N(0, 2)", ks_distance(&g, |x| gaussian_cdf(x, 2f64.sqrt())).unwrap(), 0.005);
    let cy = sample_stable(&StableParams::standard(1.0, 0.0).unwrap(), 1_000_000, &RngStream::new(12, 1)).unwrap();
    c.below("alpha = 1: KS vs Cauchy", ks_distance(&cy, cauchy_cdf).unwrap(), 0.005);
    c.budget(secs(60));
    c
}

fn csv_bytes(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    let mut out = BTreeMap::new();
    for e in std::fs::read_dir(dir).unwrap() {
        let p = e.unwrap().path();
        if p.extension().is_some_and(|x| x == "csv") {
            out.insert(p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read(&p).unwrap());
        }
    }
    out
}

fn c13() -> Criterion {
    let mut c = Criterion::new("C13 determinism of reproduce fig1-left --seed 7");
    let tmp = tempfile::tempdir().unwrap();
    let run_in = |name: &str, threads: usize| {
        let dir = tmp.path().join(name);
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| reproduce(Figure::Fig1Left, &dir, 7)).unwrap();
        csv_bytes(&dir)
    };
    let a = run_in("a", 1);
    let b = run_in("b", 1);
    let d = run_in("c", 4);
    c.holds(&format!("{} CSVs written", a.len()), a.len() >= 3);
    c.holds("two runs byte-identical", a == b);
    c.holds("1 and 4 worker threads byte-identical", a == d);
    let bin = env!("CARGO_BIN_EXE_granular-growth");
    let mut via_cli = Vec::new();
    for threads in ["1", "3"] {
        let dir = tmp.path().join(format!("cli{threads}"));
        let ok = std::process::Command::new(bin)
            .args(["reproduce", "fig1-left", "--seed", "7", "--out"])
            .arg(&dir)
            .env("GRANULAR_GROWTH_THREADS", threads)
            .output()
            .map(|o| o.status.success())
            .unwrap_or(false);
        c.holds(&format!("CLI exits 0 with GRANULAR_GROWTH_THREADS={threads}"), ok);
        via_cli.push(csv_bytes(&dir));
    }
    c.holds(
        "CLI output identical across thread settings and to the library run",
        via_cli[0] == via_cli[1] && via_cli[0] == a,
    );
    c.budget(secs(120));
    c
}

fn main() {
    let started = Instant::now();
    let mut results = Vec::new();
    let mut emit = |c: Criterion| {
        c.report();
        results.push(c.passed());
    };
    for c in wb(Instant::now()) {
        emit(c);
    }
    emit(c4());
    emit(c5());
    emit(c6());
    emit(c7());
    emit(c8());
    emit(c9());
    emit(c10());
    emit(c11());
    emit(c12());
    emit(c13());
    let failed = results.iter().filter(|p| !**p).count();
    println!(
        "acceptance: {} passed, {failed} failed, {:.1}s",
        results.len() - failed,
        started.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
