use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_confdirac")).args(args).output().unwrap()
}

fn csv_rows(out: &Output) -> (Vec<String>, Vec<Vec<String>>) {
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(str::to_owned).collect();
    let rows = lines.map(|l| l.split(',').map(str::to_owned).collect()).collect();
    (header, rows)
}

fn field(header: &[String], row: &[String], name: &str) -> String {
    let i = header.iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name}"));
    row[i].clone()
}

fn num(header: &[String], row: &[String], name: &str) -> f64 {
    field(header, row, name).parse().unwrap()
}

#[test]
fn energy_examples() {
    for (args, expected) in [
        (["--lambda", "0.5", "--n", "1", "--kappa", "-1"], 0.866_025_403_8),
        (["--lambda", "0", "--n", "3", "--kappa", "-1"], 1.0),
        (["--lambda", "0.5", "--n", "2", "--kappa", "-1"], 0.965_925_826_3),
    ] {
        let out = run(&[&["energy"][..], &args[..]].concat());
        assert!(out.status.success());
        let (h, rows) = csv_rows(&out);
        assert_eq!(rows.len(), 1);
        assert!((num(&h, &rows[0], "E_dirac") - expected).abs() < 1e-10);
    }
}

#[test]
fn energy_preserved_column_only_for_nodeless_states() {
    let out = run(&["energy", "--lambda", "0.3", "--n-max", "2"]);
    let (h, rows) = csv_rows(&out);
    assert_eq!(rows.len(), 4);
    for row in &rows {
        let (n, k): (i32, i32) = (num(&h, row, "n") as i32, num(&h, row, "kappa") as i32);
        assert_eq!(field(&h, row, "E_preserved").is_empty(), n != -k);
    }
}

#[test]
fn shift_table_flags_the_reference_and_adds_up() {
    let out = run(&["shift", "--lambda", "0.3", "--mu", "1e-3", "--kappa0", "-1", "--n-max", "3"]);
    assert!(out.status.success());
    let (h, rows) = csv_rows(&out);
    for row in &rows {
        let (n, k) = (field(&h, row, "n"), field(&h, row, "kappa"));
        let total = num(&h, row, "total");
        let parts = num(&h, row, "term_linear") + num(&h, row, "term_spin_orbit") + num(&h, row, "term_kinetic");
        assert!((total - parts).abs() <= 1e-15, "({n}, {k})");
        if (n.as_str(), k.as_str()) == ("1", "-1") {
            assert_eq!(total, 0.0);
            assert_eq!(field(&h, row, "preserved"), "true");
        }
        if (n.as_str(), k.as_str()) == ("2", "-1") {
            assert!((num(&h, row, "coefficient") - 2.625).abs() < 1e-12);
            assert_eq!(field(&h, row, "bracket"), "21/2");
        }
    }
}

#[test]
fn scan_examples() {
    let out = run(&["scan", "--n-max", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let (h, rows) = csv_rows(&out);
    assert_eq!(h, ["n", "kappa", "N", "physical"]);
    assert_eq!(rows, [["1", "-1", "1", "true"], ["1", "1", "1", "false"]]);
    assert_eq!(run(&["scan"]).status.code(), Some(0));
}

#[test]
fn json_mirrors_csv_fields() {
    let csv = run(&["shift", "--n-max", "2"]);
    let json = run(&["shift", "--n-max", "2", "--format", "json"]);
    let (h, rows) = csv_rows(&csv);
    let v: Value = serde_json::from_slice(&json.stdout).unwrap();
    let arr = v.as_array().unwrap();
    assert_eq!(arr.len(), rows.len());
    for (obj, row) in arr.iter().zip(&rows) {
        let keys: Vec<&String> = obj.as_object().unwrap().keys().collect();
        assert_eq!(keys, h.iter().collect::<Vec<_>>());
        let total: f64 = field(&h, row, "total").parse().unwrap();
        assert_eq!(obj["total"].as_f64().unwrap(), total);
    }
}

#[test]
fn output_flag_writes_the_same_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("e.csv");
    let direct = run(&["energy", "--n-max", "2"]);
    let filed = run(&["energy", "--n-max", "2", "--output", path.to_str().unwrap()]);
    assert!(filed.status.success() && filed.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), direct.stdout);
    assert!(!direct.stdout.contains(&b'\r'));
}

#[test]
fn ansatz_report() {
    let out = run(&["ansatz", "--lambda", "0.5", "--mu", "1e-4", "--kappa0", "-1"]);
    let (h, rows) = csv_rows(&out);
    let row = &rows[0];
    for i in 1..=6 {
        assert!(num(&h, row, &format!("gamma_dev_{i}")) <= 1e-10);
    }
    assert!(num(&h, row, "norm_defect") <= 1e-8);
    let base = num(&h, row, "residual");
    assert!(base <= 1e-10);
    assert_eq!(field(&h, row, "coulomb_limit"), "false");

    let (h2, rows2) = csv_rows(&run(&["ansatz", "--detune", "1e-3"]));
    assert!(num(&h2, &rows2[0], "residual") > 1e3 * base.max(1e-16));

    let (h3, rows3) = csv_rows(&run(&["ansatz", "--mu", "0"]));
    assert_eq!(field(&h3, &rows3[0], "coulomb_limit"), "true");
    assert!(field(&h3, &rows3[0], "gamma_dev_3").is_empty());
}

#[test]
fn solve_preserved_level() {
    let out = run(&["solve", "--family", "coulomb-linear", "--lambda", "0.5", "--mu", "1e-3"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let (h, rows) = csv_rows(&out);
    assert_eq!(field(&h, &rows[0], "reference_kind"), "preserved");
    assert!(num(&h, &rows[0], "difference").abs() < 1e-8);
}

#[test]
fn solve_antiparticle_matches_airy() {
    let out = run(&["solve", "--family", "antiparticle-linear", "--mu", "0.5", "--states", "3"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let (h, rows) = csv_rows(&out);
    assert_eq!(rows.len(), 3);
    for row in &rows {
        let rel = num(&h, row, "difference").abs() / (num(&h, row, "reference") - 1.0);
        assert!(rel < 1e-6);
    }
}

#[test]
fn solve_bag_and_dump() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("wf.csv");
    let out = run(&["solve", "--family", "bag", "--M", "20", "--dump-wavefunction", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let (h, rows) = csv_rows(&out);
    assert!(num(&h, &rows[0], "difference").abs() < 1e-8);
    assert!(num(&h, &rows[0], "residual") <= 1e-8);
    let dump = std::fs::read_to_string(&path).unwrap();
    assert!(dump.starts_with("r,f,g\n"));
    assert!(dump.lines().count() > 1000);
}

#[test]
fn exit_codes() {
    // domain errors
    assert_eq!(run(&["energy", "--lambda", "1.5", "--n", "1", "--kappa", "-1"]).status.code(), Some(2));
    assert_eq!(run(&["energy", "--n", "1", "--kappa", "1"]).status.code(), Some(2));
    assert_eq!(run(&["ansatz", "--mu", "-1e-4"]).status.code(), Some(2));
    assert_eq!(run(&["solve", "--family", "bag", "--A", "-1"]).status.code(), Some(2));
    assert_eq!(run(&["energy", "--mass", "0"]).status.code(), Some(2));
    assert_eq!(run(&["energy", "--no-such-flag"]).status.code(), Some(2));
    let out = run(&["energy", "--lambda", "1.5", "--n", "1", "--kappa", "-1"]);
    assert_eq!(String::from_utf8_lossy(&out.stderr).lines().count(), 1);
    // a grid far too coarse to resolve the state
    let coarse = run(&["solve", "--family", "coulomb", "--points", "30"]);
    assert_eq!(coarse.status.code(), Some(4));
    assert!(!coarse.stdout.is_empty());
}

#[test]
fn seed_defaults_are_runnable() {
    let out = run(&["--seed-defaults"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for cmd in ["energy", "shift", "scan", "solve", "ansatz"] {
        assert!(text.lines().any(|l| l.starts_with(cmd)), "no {cmd} scenario");
    }
}
