use std::path::Path;
use std::process::{Command, Output};

use herzlab::grid::{FunctionSpec, Grid, GridFunction, GridGeometry};
use herzlab_cli::commands::DecompositionManifest;
use herzlab_cli::config::SuiteConfig;
use herzlab_cli::report::VerificationReport;
use herzlab_cli::suites::run_suites;

const SMALL: &str = "\
seed = 7
grid.resolution = 256
suite.samples = 4
suite.pairs = 500
suite.family_size = 4
";

fn herzlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_herzlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_config(dir: &Path, text: &str) -> String {
    let path = dir.join("run.cfg");
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

fn unit_ball_csv(dir: &Path) -> String {
    let d = herzlab::dilation::Dilation::new(&[vec![2.0]]).unwrap();
    let geo = GridGeometry::new(&d, Grid::new(1, 2.0, 512).unwrap()).unwrap();
    let f = geo
        .sample(&FunctionSpec::Annulus { k: 0 })
        .add(&geo.sample(&FunctionSpec::Indicator { k: -2 }).scale(3.0))
        .unwrap();
    let path = dir.join("f.csv");
    f.write_csv(std::fs::File::create(&path).unwrap()).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn verify_is_deterministic() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), SMALL);
    let mut outputs = Vec::new();
    for run in ["a", "b"] {
        let out = tmp.path().join(run);
        let o = herzlab(&[
            "verify",
            "all",
            "--config",
            &cfg,
            "--seed",
            "7",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&o.stdout)
        );
        outputs.push((
            std::fs::read(out.join("report.json")).unwrap(),
            std::fs::read(out.join("summary.csv")).unwrap(),
            o.stdout,
        ));
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn seed_changes_digests() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), SMALL);
    let run = |seed: &str| -> Vec<VerificationReport> {
        let o = herzlab(&[
            "verify",
            "grandseq",
            "--config",
            &cfg,
            "--seed",
            seed,
            "--out",
            tmp.path().join(seed).to_str().unwrap(),
        ]);
        serde_json::from_slice(&o.stdout).unwrap()
    };
    let (a, b) = (run("1"), run("2"));
    assert_eq!(a.len(), b.len());
    assert!(a
        .iter()
        .zip(&b)
        .all(|(x, y)| x.inputs_digest != y.inputs_digest && x.check == y.check));
    assert!(a.iter().all(|r| r.seed == 1));
}

#[test]
fn reports_round_trip_through_json() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), SMALL);
    let out = tmp.path().join("r");
    let o = herzlab(&[
        "verify",
        "herz,atoms",
        "--config",
        &cfg,
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(out.join("report.json")).unwrap();
    let reports: Vec<VerificationReport> = serde_json::from_str(&text).unwrap();
    assert!(!reports.is_empty());
    assert!(reports
        .iter()
        .all(|r| r.suite == "herz" || r.suite == "atoms"));
    let mut again = serde_json::to_string_pretty(&reports).unwrap();
    again.push('\n');
    assert_eq!(again, text);
    let csv = std::fs::read_to_string(out.join("summary.csv")).unwrap();
    assert_eq!(csv.lines().count(), reports.len() + 1);
}

#[test]
fn usage_errors_exit_with_2() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().to_str().unwrap();
    let o = herzlab(&["verify", "", "--out", out]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("config error"));
    assert_eq!(
        herzlab(&["verify", "bogus", "--out", out]).status.code(),
        Some(2)
    );
    assert_eq!(
        herzlab(&["oracle", "bogus", "--out", out]).status.code(),
        Some(2)
    );
    let bad = write_config(tmp.path(), "no.such.key = 1\n");
    assert_eq!(
        herzlab(&["verify", "all", "--config", &bad, "--out", out])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        herzlab(&["norm", "--input", "/nonexistent.csv"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn lebesgue_suite_passes_on_defaults() {
    let cfg = SuiteConfig {
        samples: 8,
        ..SuiteConfig::default()
    };
    let reports = run_suites("lebesgue", &cfg).unwrap();
    let failed: Vec<_> = reports.iter().filter(|r| !r.pass).collect();
    assert!(failed.is_empty(), "{failed:#?}");
}

#[test]
fn oracle_writes_reference_values() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().to_str().unwrap();
    let text = "herz.alpha = 0.5\nherz.q = 2\nherz.p = 1\nherz.theta = 1\n";
    let cfg = write_config(tmp.path(), text);
    let o = herzlab(&["oracle", "grand_seq_dense", "--config", &cfg, "--out", out]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["value"].as_f64().unwrap() - 1.3211).abs() < 1e-4);
    let o = herzlab(&["oracle", "constant_herz", "--config", &cfg, "--out", out]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let parsed = SuiteConfig::parse(text).unwrap();
    let expected = herzlab::oracle::constant_herz(&herzlab::oracle::ConstantHerzCase {
        b: 2.0,
        alpha: 0.5,
        q: 2.0,
        p: 1.0,
        theta: 1.0,
        lambda: parsed.herz.lambda,
    });
    assert_eq!(v["value"].as_f64().unwrap(), expected.value);
    assert!(tmp.path().join("oracle_constant_herz.json").exists());
}

#[test]
fn norm_reports_every_field() {
    let tmp = tempfile::tempdir().unwrap();
    let input = unit_ball_csv(tmp.path());
    for space in ["herz", "herz-morrey", "nonhomog"] {
        let o = herzlab(&["norm", "--space", space, "--input", &input]);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&o.stderr)
        );
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        for key in [
            "norm",
            "tail_bound",
            "per_k_terms",
            "argmax_eps",
            "argmax_L",
        ] {
            assert!(v.get(key).is_some(), "{space}: missing {key}");
        }
        assert!(v["norm"].as_f64().unwrap() > 0.0);
    }
    let o = herzlab(&["norm", "--input", &input, "--format", "csv"]);
    assert!(String::from_utf8_lossy(&o.stdout).starts_with("k,term\n"));
}

#[test]
fn decomposition_directory_reconstructs_input() {
    let tmp = tempfile::tempdir().unwrap();
    let input = unit_ball_csv(tmp.path());
    let dir = tmp.path().join("dec");
    let o = herzlab(&[
        "decompose",
        "--input",
        &input,
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let m: DecompositionManifest =
        serde_json::from_str(&std::fs::read_to_string(dir.join("manifest.json")).unwrap()).unwrap();
    assert!((m.norm - m.seq_functional).abs() <= 1e-9 * m.norm);
    let f = GridFunction::read_csv(std::io::BufReader::new(
        std::fs::File::open(&input).unwrap(),
    ))
    .unwrap();
    let mut sum = GridFunction::zeros(*f.grid());
    for b in &m.blocks {
        let data = GridFunction::read_csv(std::io::BufReader::new(
            std::fs::File::open(dir.join(&b.file)).unwrap(),
        ))
        .unwrap();
        sum = sum.add(&data.scale(b.coefficient)).unwrap();
    }
    assert!(sum.max_abs_diff(&f).unwrap() <= 1e-12 * f.sup_norm());
}

#[test]
fn atoms_make_validate_and_sum() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().to_str().unwrap();
    for (kind, k, s) in [("bump", "-2", "2"), ("haar", "-1", "0")] {
        let o = herzlab(&[
            "atoms", "make", "--kind", kind, "--k", k, "--s", s, "--out", dir,
        ]);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
    let manifest = tmp.path().join("atom_bump_k-2_s2.json");
    let o = herzlab(&[
        "atoms",
        "validate",
        "--manifest",
        manifest.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["pass"], true);
    // restricted type needs k ≥ 0
    let o = herzlab(&[
        "atoms",
        "validate",
        "--restricted",
        "--manifest",
        manifest.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let sum = tmp.path().join("sum.json");
    std::fs::write(
        &sum,
        r#"{"atoms": [{"atom": "atom_bump_k-2_s2.json", "lambda": 1.0}, {"atom": "atom_haar_k-1_s0.json", "lambda": -0.5}]}"#,
    )
    .unwrap();
    let o = herzlab(&["atoms", "sumcheck", "--manifest", sum.to_str().unwrap()]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["atoms"], 2);
    assert!(r["ratio"].as_f64().unwrap() > 0.0);
}

#[test]
fn sweep_writes_table_and_heatmap() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().to_str().unwrap();
    let o = herzlab(&[
        "sweep",
        "--operator",
        "hardy",
        "--alpha",
        "0.1:0.3:0.1",
        "--lambda",
        "0:0.05:0.05",
        "--family",
        "scales=1",
        "--resolution",
        "256",
        "--svg",
        "--out",
        dir,
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let csv = std::fs::read_to_string(tmp.path().join("sweep.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 3 * 2);
    let svg = std::fs::read_to_string(tmp.path().join("sweep.svg")).unwrap();
    assert_eq!(svg.matches("<rect").count(), 6);
}
