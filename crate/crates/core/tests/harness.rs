use std::path::Path;
use std::process::Command;

use granular_growth::harness::*;
use granular_growth::Error;

const BIN: &str = env!("CARGO_BIN_EXE_granular-growth");

fn schema() -> jsonschema::JSONSchema {
    let text = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/manifest.schema.json")).unwrap();
    jsonschema::JSONSchema::compile(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn assert_manifest_valid(dir: &Path) -> serde_json::Value {
    let manifest: serde_json::Value = serde_json::from_slice(&std::fs::read(dir.join("manifest.json")).unwrap()).unwrap();
    let schema = schema();
    if let Err(errors) = schema.validate(&manifest) {
        let msgs: Vec<String> = errors.map(|e| e.to_string()).collect();
        panic!("manifest invalid: {msgs:?}");
    }
    for o in manifest["outputs"].as_array().unwrap() {
        let bytes = std::fs::read(dir.join(o["file"].as_str().unwrap())).unwrap();
        assert_eq!(o["sha256"].as_str().unwrap(), sha256_hex(&bytes));
        assert_eq!(o["bytes"].as_u64().unwrap(), bytes.len() as u64);
    }
    manifest
}

fn header(dir: &Path, file: &str) -> String {
    std::fs::read_to_string(dir.join(file)).unwrap().lines().next().unwrap().to_string()
}

#[test]
fn experiment_from_toml() {
    let tmp = tempfile::tempdir().unwrap();
    let text = format!(
        r#"
seed = 11
output_dir = "{}"

[model]
kind = "wyart_bouchaud"
n_firms = 5000

[[analyses]]
kind = "density"
grid_size = 128

[[analyses]]
kind = "size_volatility"
statistic = "mean_abs"
n_bins = 10

[[analyses]]
kind = "tail"
side = "upper"
variable = "size"
"#,
        tmp.path().display()
    );
    let cfg = ExperimentConfig::from_toml_str(&text).unwrap();
    let m = run_experiment(&cfg).unwrap();
    assert_eq!(m.seed, 11);
    assert!(m.checksum("density.csv").is_some());
    assert_eq!(header(tmp.path(), "density.csv"), "g,density");
    assert_eq!(header(tmp.path(), "size_volatility.csv"), "size,count,mean_abs,rms,sd");
    assert_eq!(std::fs::read_to_string(tmp.path().join("density.csv")).unwrap().lines().count(), 129);
    let manifest = assert_manifest_valid(tmp.path());
    assert_eq!(manifest["config"]["model"]["kind"], "wyart_bouchaud");
    let summary: serde_json::Value = serde_json::from_slice(&std::fs::read(tmp.path().join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["model"], "wb");
}

#[test]
fn default_analyses_for_every_model() {
    let small = [
        ("simon", "n_steps = 20000\nn_seed_firms = 100"),
        ("gpg", "n_steps = 20000\nn_seed_firms = 2000"),
        ("psi_mixture", "n_firms = 5000"),
        ("sutton", "size_grid = [50, 100, 200]\nsamples_per_size = 100"),
        ("fas", "k0_grid = [30, 100, 300]\nsamples = 200"),
    ];
    for (kind, extra) in small {
        let tmp = tempfile::tempdir().unwrap();
        let text = format!("seed = 1\noutput_dir = \"{}\"\n[model]\nkind = \"{kind}\"\n{extra}\n", tmp.path().display());
        let cfg = ExperimentConfig::from_toml_str(&text).unwrap();
        assert!(!cfg.analyses.is_empty());
        run_experiment(&cfg).unwrap_or_else(|e| panic!("{kind}: {e}"));
        assert_manifest_valid(tmp.path());
    }
}

#[test]
fn config_errors() {
    assert!(matches!(
        ExperimentConfig::from_toml_str("seed = 1\noutput_dir = \"x\"\n[model]\nkind = \"nope\"\n"),
        Err(Error::Config { .. })
    ));
    assert!(matches!(
        ExperimentConfig::from_toml_str("seed = 1\nbogus = 2\noutput_dir = \"x\"\n[model]\nkind = \"simon\"\n"),
        Err(Error::Config { .. })
    ));
    let err = ExperimentConfig::from_toml_file(Path::new("/definitely/missing.toml")).unwrap_err();
    assert_eq!(err.exit_code(), 2);
}

#[test]
fn reproduce_right_panel() {
    let tmp = tempfile::tempdir().unwrap();
    let m = reproduce(Figure::Fig1Right, tmp.path(), 3).unwrap();
    assert!(m.checksum("mixture_reference.csv").is_some());
    assert_eq!(header(tmp.path(), "unit_count_hist.csv"), "unit_count,firms,frequency,geometric_fit");
    assert_manifest_valid(tmp.path());
    assert_eq!("fig1_left".parse::<Figure>().unwrap(), Figure::Fig1Left);
    assert!("fig9".parse::<Figure>().is_err());
}

#[test]
fn selftest_passes() {
    let checks = selftest();
    assert!(checks.len() >= 8);
    for c in checks {
        assert!(c.passed, "{}: {}", c.name, c.detail);
    }
}

#[test]
fn csv_cells_are_bit_exact() {
    let t = Table {
        headers: vec!["a", "b"],
        rows: vec![vec![Cell::F(0.1), Cell::U(3)]],
    };
    let text = String::from_utf8(t.to_csv_bytes().unwrap()).unwrap();
    let value: f64 = text.lines().nth(1).unwrap().split(',').next().unwrap().parse().unwrap();
    assert_eq!(value, 0.1);
}

fn cli(args: &[&str]) -> std::process::Output {
    Command::new(BIN).args(args).output().unwrap()
}

#[test]
fn cli_exit_codes() {
    assert_eq!(cli(&["--help"]).status.code(), Some(0));
    assert_eq!(cli(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(cli(&["selftest"]).status.code(), Some(0));
    let missing = cli(&["simulate", "wb", "--config", "/definitely/missing.toml"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("missing.toml"));
    assert_eq!(cli(&["simulate", "wb", "--set", "alpha=-3", "--out", "/tmp/unused-gg"]).status.code(), Some(1));
}

#[test]
fn cli_simulate_with_overrides() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("run");
    let o = Command::new(BIN)
        .args(["simulate", "psi", "--seed", "4", "--set", "n_firms=3000", "--set", "psi=1.0", "--out"])
        .arg(&out)
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let manifest = assert_manifest_valid(&out);
    assert_eq!(manifest["config"]["model"]["n_firms"], 3000);
    assert_eq!(manifest["seed"], 4);
}

#[test]
fn cli_oracle_commands() {
    let o = cli(&["oracle", "partitions", "--total", "10"]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stdout).contains("42"));
    let o = cli(&["oracle", "density", "--psi", "-1", "--points", "3"]);
    assert!(o.status.success());
    let text = String::from_utf8_lossy(&o.stdout).to_string();
    assert_eq!(text.lines().count(), 4, "{text}");
    let o = cli(&["oracle", "exponents", "--mu", "1.4"]);
    assert!(String::from_utf8_lossy(&o.stdout).contains("herfindahl_tail_index"));
    assert_eq!(cli(&["oracle", "exponents", "--mu", "3"]).status.code(), Some(1));
}
