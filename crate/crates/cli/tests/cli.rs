use std::path::Path;
use std::process::{Command, Output};

fn summa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_summa"))
        .args(args)
        .env_remove("SUMMA_THREADS")
        .output()
        .expect("binary runs")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn data_rows(path: &Path) -> Vec<String> {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .skip(2)
        .map(str::to_string)
        .collect()
}

#[test]
fn dirichlet_figure_data() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("d5.csv");
    let o = summa(&[
        "kernel", "--d", "1", "--method", "dirichlet", "--n", "5", "--grid", "512", "--format", "csv", "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("# summa v1, kernel, "));
    assert!(!text.contains('\r'));
    assert_eq!(text.lines().nth(1), Some("x,value"));
    let rows = data_rows(&out);
    assert_eq!(rows.len(), 513);
    // D_5 peaks at 2n + 1 = 11 at x = 0 (row 256)
    let mid: Vec<f64> = rows[256].split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(mid[0], 0.0);
    assert!((mid[1] - 11.0).abs() < 1e-12);
}

#[test]
fn negative_index_is_a_usage_error() {
    let o = summa(&["kernel", "--d", "1", "--method", "dirichlet", "--n", "-3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--n"));
}

#[test]
fn validation_errors_name_the_flag() {
    for (args, flag) in [
        (vec!["kernel", "--n", "4", "--grid", "100"], "--grid"),
        (vec!["kernel", "--n", "4", "--method", "abel"], "--method"),
        (vec!["kernel", "--n", "4", "--q", "3"], "--q"),
        (vec!["kernel", "--n", "4", "--method", "riesz", "--alpha", "-1"], "--alpha"),
        (vec!["kernel", "--n", "4", "--method", "theta", "--theta", "nope"], "--theta"),
        (vec!["kernel", "--d", "2", "--n", "3", "--n", "4", "--q", "2"], "--n"),
        (vec!["means", "--n", "4", "--f", "wobble"], "--f"),
        (vec!["maxop", "--operator", "median"], "--operator"),
        (vec!["verify", "--suite", "nonsense"], "--suite"),
    ] {
        let o = summa(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
        assert!(stderr(&o).contains(flag), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn unknown_flag_rejected() {
    let o = summa(&["kernel", "--n", "4", "--colour", "red"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_identity_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.json");
    let o = summa(&["verify", "--suite", "identity", "--report", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["suite_id"], "identity");
}

#[test]
fn verify_without_timing_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let o = summa(&["verify", "--suite", "rotation", "--no-timing", "--report", p.to_str().unwrap()]);
        assert!(o.status.success(), "{}", stderr(&o));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let o = summa(&[
            "means", "--d", "2", "--q", "2", "--method", "riesz", "--gamma", "2", "--n", "6", "--grid", "16", "--f",
            "trig(5,3)", "--out", p.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", stderr(&o));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    std::fs::write(&cfg, r#"{"d": 1, "method": "fejer", "n": [7], "grid": 16}"#).unwrap();
    let out = dir.path().join("k.csv");
    let o = summa(&["kernel", "--config", cfg.to_str().unwrap(), "--n", "3", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.lines().next().unwrap().contains("method=fejer n=3"));
    assert_eq!(data_rows(&out).len(), 17);
}

#[test]
fn figures_write_csv_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    for id in ["f14", "f17", "f23", "f26"] {
        let csv = dir.path().join(format!("{id}.csv"));
        let o = summa(&["figure", id, "--grid", "16", "--out", csv.to_str().unwrap()]);
        assert!(o.status.success(), "{id}: {}", stderr(&o));
        assert!(std::fs::read_to_string(&csv).unwrap().starts_with("# summa v1, figure, "));
        let svg = dir.path().join(format!("{id}.svg"));
        let o = summa(&["figure", id, "--grid", "16", "--format", "svg", "--out", svg.to_str().unwrap()]);
        assert!(o.status.success(), "{id}: {}", stderr(&o));
        let text = std::fs::read_to_string(&svg).unwrap();
        assert!(text.starts_with("<svg") && text.trim_end().ends_with("</svg>"));
    }
    let o = summa(&["figure", "f99"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn fejer_figure_is_nonnegative() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("f14.csv");
    let o = summa(&["figure", "f14", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    for row in data_rows(&out) {
        let v: f64 = row.split(',').nth(1).unwrap().parse().unwrap();
        assert!(v >= -1e-12);
    }
}

#[test]
fn norm_json() {
    let o = summa(&["norm", "--f", "const(1)", "--norm", "herz", "--p", "1", "--format", "json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    // E_1 of a constant is its L_1 norm, 2π
    assert!((v["value"].as_f64().unwrap() - 2.0 * std::f64::consts::PI).abs() < 1e-10);
}

#[test]
fn maxop_constant_is_fixed() {
    let o = summa(&["maxop", "--d", "2", "--grid", "16", "--f", "const(2)", "--operator", "cone"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = String::from_utf8(o.stdout).unwrap();
    for line in text.lines().skip(2) {
        let v: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
        assert!((v - 2.0).abs() < 1e-12);
    }
}

#[test]
fn computation_error_exits_one() {
    // a degree-8 polynomial does not fit on a 4-point grid
    let o = summa(&["means", "--n", "2", "--grid", "4", "--f", "trig(8,1)"]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
}

#[test]
fn thread_cap_is_validated() {
    let o = Command::new(env!("CARGO_BIN_EXE_summa"))
        .args(["kernel", "--n", "3", "--grid", "8"])
        .env("SUMMA_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("SUMMA_THREADS"));
    let o = Command::new(env!("CARGO_BIN_EXE_summa"))
        .args(["kernel", "--n", "3", "--grid", "8"])
        .env("SUMMA_THREADS", "2")
        .output()
        .unwrap();
    assert!(o.status.success());
}
