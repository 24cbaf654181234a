use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hdirichlet"))
        .args(args)
        .env_remove("HDIRICHLET_QUAD_ORDER")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn column(csv: &str, name: &str) -> Vec<String> {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let i = header.iter().position(|h| *h == name).unwrap();
    lines.map(|l| l.split(',').nth(i).unwrap().to_string()).collect()
}

#[test]
fn coefficient_paths_agree() {
    let out = stdout(&["coeff", "--n", "4", "--m", "0..5", "--s", "0.5", "--method", "both"]);
    assert!(out.starts_with("m,quadrature,continuation,rel_diff\n"));
    let diffs = column(&out, "rel_diff");
    assert_eq!(diffs.len(), 6);
    for d in diffs {
        assert!(d.parse::<f64>().unwrap() <= 1e-9, "{d}");
    }
}

#[test]
fn residues_at_minus_three() {
    let out = stdout(&["residue", "--n", "3", "--m", "1..3", "--at", "-3"]);
    let got: Vec<f64> = column(&out, "residue").iter().map(|v| v.parse().unwrap()).collect();
    for (v, expected) in got.iter().zip([4.0, 12.0, 24.0]) {
        assert!((v - expected).abs() < 1e-6 * expected);
    }
}

#[test]
fn kernel_vanishes_at_the_origin() {
    let out = stdout(&[
        "kernel", "--n", "3", "--x", "0,0,0", "--y", "0.3,0,0", "--method", "closed",
    ]);
    assert_eq!(column(&out, "value")[0].parse::<f64>().unwrap(), 0.0);
}

#[test]
fn json_mirrors_csv_columns() {
    let out = stdout(&["--format", "json", "residue", "--n", "4", "--m", "1,2", "--at", "-4"]);
    let rows: serde_json::Value = serde_json::from_str(&out).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].get("m").is_some() && rows[0].get("residue").is_some());
}

#[test]
fn scan_records_as_jsonl() {
    let out = stdout(&[
        "wallach",
        "--n",
        "3",
        "--m-max",
        "2",
        "--s",
        "-3:-2:0.5",
        "--format",
        "json",
    ]);
    let lines: Vec<serde_json::Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 6);
    let pole = &lines[0];
    assert_eq!(pole["sign"], "pole");
    assert!(pole["value"].is_null());
    let mut keys: Vec<&str> = pole.as_object().unwrap().keys().map(String::as_str).collect();
    keys.sort_unstable();
    assert_eq!(keys, ["grid_id", "m", "method", "n", "s", "sign", "value"]);
}

#[test]
fn output_is_deterministic() {
    let args = ["wallach", "--n", "4", "--m-max", "5", "--s", "-0.5:1:0.25"];
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn bad_input_exits_with_two() {
    for args in [
        &["coeff", "--n", "2", "--m", "1", "--s", "0"][..],
        &["coeff", "--n", "3", "--m", "1", "--s", "-1.5", "--method", "quadrature"],
        &["frobnicate"],
        &["kernel", "--n", "3", "--x", "0.9,0.9,0", "--y", "0,0,0"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn verify_reports_each_criterion() {
    let out = run(&["verify", "--only", "1,2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("[PASS]")).count(), 2);
}

#[test]
fn verify_fails_with_one() {
    let out = run(&["verify", "--only", "7"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn quadrature_order_from_the_environment() {
    let base = ["coeff", "--n", "3", "--m", "2", "--s", "0.5", "--method", "quadrature"];
    let out = Command::new(env!("CARGO_BIN_EXE_hdirichlet"))
        .args(base)
        .env("HDIRICHLET_QUAD_ORDER", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let coarse = Command::new(env!("CARGO_BIN_EXE_hdirichlet"))
        .args(base)
        .env("HDIRICHLET_QUAD_ORDER", "64")
        .output()
        .unwrap();
    assert!(coarse.status.success());
}
