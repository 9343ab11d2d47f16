use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coarse-cover"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_config(command: &str, config: &Path, extra: &[&str]) -> Output {
    let mut args = vec![command, "--config", config.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args)
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

fn write_config(dir: &Path, text: &str) -> PathBuf {
    let path = dir.join("config.json");
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn heisenberg_growth_is_quartic() {
    let out = run_config("growth", &configs().join("growth_heisenberg.json"), &[]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let r = report(&out);
    assert_eq!(r["command"], "growth");
    assert_eq!(r["status"], "ok");
    assert_eq!(r["results"]["profile"]["sizes"][12], 8871);
    let degree = r["results"]["classification"]["degree"].as_f64().unwrap();
    assert!((3.5..=4.5).contains(&degree), "degree {degree}");
    assert_eq!(r["inputs_digest"].as_str().unwrap().len(), 64);
    assert!(r.get("timestamp").is_none());
}

#[test]
fn iwasawa_norm_matches_closed_form() {
    let out = run_config("norm", &configs().join("norm_iwasawa.json"), &[]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let r = report(&out);
    let value = r["results"]["result"]["value"].as_f64().unwrap();
    let exact = 2.0 * std::f64::consts::PI.powf(1.5);
    assert!((value - exact).abs() / exact <= 1e-4, "{value} vs {exact}");
}

#[test]
fn word_distances_in_the_heisenberg_group() {
    let out = run_config("dist", &configs().join("dist.json"), &[]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let d: Vec<u64> = report(&out)["results"]["pairs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["distance"].as_u64().unwrap())
        .collect();
    assert_eq!(d, vec![4, 8, 2]);
}

#[test]
fn qi_fit_of_a_doubling_map_is_feasible() {
    let out = run_config("qi-fit", &configs().join("qi_fit.json"), &[]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let w = &report(&out)["results"]["witness"];
    assert_eq!(w["feasible"], true);
    assert!(w["l"].as_f64().unwrap() <= 8.0);
}

#[test]
fn qi_fit_without_pairs_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        r#"{"maps": {"m": {"pairs": [[[0], [0]]]}}, "qi_fit": {"map": "m", "l_max": 2, "c_max": 1}}"#,
    );
    let out = run_config("qi-fit", &cfg, &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn malformed_configs_exit_with_code_two() {
    let dir = tempfile::tempdir().unwrap();
    for (command, text) in [
        ("growth", "not json"),
        ("growth", r#"{"unknown_section": {}}"#),
        ("growth", r#"{"growth": {"group": "missing", "r_max": 4}}"#),
        (
            "growth",
            r#"{"groups": {"z": {"kind": "free_abelian", "rank": 1}}, "growth": {"group": "z", "r_max": 8, "tail_fraction": 2}}"#,
        ),
        (
            "norm",
            r#"{"functions": {"g": {"kind": "gaussian", "dim": 1}}, "norm": {"kind": "modulation", "function": "g", "p": 0.5, "q": 2}}"#,
        ),
        ("delta", r#"{"groups": {"s": {"kind": "sl2z"}}}"#),
    ] {
        let cfg = write_config(dir.path(), text);
        let out = run_config(command, &cfg, &[]);
        assert_eq!(out.status.code(), Some(2), "{text}");
    }
    assert_eq!(run(&["growth"]).status.code(), Some(2));
    let missing = configs().join("does_not_exist.json");
    assert_eq!(run_config("growth", &missing, &[]).status.code(), Some(2));
}

#[test]
fn exhausted_budget_exits_four_with_partial_results() {
    let out = run_config(
        "growth",
        &configs().join("growth_heisenberg.json"),
        &["--budget", "2000"],
    );
    assert_eq!(out.status.code(), Some(4));
    let r = report(&out);
    assert_eq!(r["status"], "resource_limit");
    let sizes = r["results"]["partial"]["sizes"].as_array().unwrap();
    assert!(!sizes.is_empty() && sizes.len() < 13);
}

#[test]
fn reports_and_side_files_are_reproducible() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let cfg = configs().join("nerve.json");
    for dir in [&a, &b] {
        let out = run_config("nerve", &cfg, &["--out", dir.path().to_str().unwrap()]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    for name in ["nerve.json", "nerve_edges.csv", "growth.csv"] {
        let x = std::fs::read(a.path().join(name)).unwrap();
        let y = std::fs::read(b.path().join(name)).unwrap();
        assert_eq!(x, y, "{name}");
    }
    let edges = std::fs::read_to_string(a.path().join("nerve_edges.csv")).unwrap();
    assert!(edges.starts_with("index_a,index_b\n"));
    let r: Value =
        serde_json::from_slice(&std::fs::read(a.path().join("nerve.json")).unwrap()).unwrap();
    assert_eq!(
        r["side_files"],
        serde_json::json!(["nerve_edges.csv", "growth.csv"])
    );
}

#[test]
fn seed_and_overrides_change_the_digest() {
    let cfg = configs().join("delta.json");
    let plain = report(&run_config("delta", &cfg, &[]));
    let seeded = report(&run_config("delta", &cfg, &["--seed", "99"]));
    assert_ne!(plain["inputs_digest"], seeded["inputs_digest"]);
    assert_eq!(seeded["results"]["options"]["seed"], 99);
}

#[test]
fn missing_seed_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        r#"{"groups": {"s": {"kind": "sl2z"}}, "delta": {"group": "s", "radii": [2, 3]}}"#,
    );
    let r = report(&run_config("delta", &cfg, &[]));
    let warnings = r["warnings"].as_array().unwrap();
    assert!(warnings
        .iter()
        .any(|w| w.as_str().unwrap().contains("default seed")));
}

#[test]
fn obstruction_separates_growth_types() {
    let out = run_config("obstruct", &configs().join("obstruct.json"), &[]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let reports = report(&out)["results"]["reports"]
        .as_array()
        .unwrap()
        .clone();
    assert_eq!(reports.len(), 3);
    for r in &reports {
        let kinds: Vec<&str> = r["verdict"]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v["kind"].as_str().unwrap())
            .collect();
        assert!(kinds.contains(&"not_quasi_isometric"), "{r}");
    }
}

#[test]
fn csv_functions_are_read_and_digested() {
    let dir = tempfile::tempdir().unwrap();
    let mut rows = String::from("x,re,im\n");
    for k in -48..=48 {
        let x = k as f64 / 8.0;
        rows.push_str(&format!(
            "{x},{},0\n",
            (-std::f64::consts::PI * x * x).exp()
        ));
    }
    std::fs::write(dir.path().join("g.csv"), &rows).unwrap();
    let cfg = write_config(
        dir.path(),
        r#"{"coverings": {"grid": {"kind": "uniform_grid", "dim": 1}},
            "functions": {"g": {"csv": "g.csv"}},
            "norm": {"kind": "decomposition", "function": "g", "covering": "grid", "p": 2, "q": 2}}"#,
    );
    let first = report(&run_config("norm", &cfg, &[]));
    assert_eq!(first["status"], "ok");
    let g = first["results"]["global"].as_f64().unwrap();
    assert!((g - 0.6181544860429582).abs() < 1e-3, "{g}");
    std::fs::write(dir.path().join("g.csv"), rows.replace(",0\n", ",0.0\n")).unwrap();
    let second = report(&run_config("norm", &cfg, &[]));
    assert_ne!(first["inputs_digest"], second["inputs_digest"]);
}
