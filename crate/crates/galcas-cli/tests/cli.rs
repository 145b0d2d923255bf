//! End-to-end tests of the binary: exit codes, JSON round trips, and
//! determinism of the sampled counting.

use std::path::PathBuf;
use std::process::{Command, Output};

fn galcas(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_galcas"))
        .args(args)
        .env_remove("GALCAS_GRID")
        .output()
        .expect("binary runs")
}

fn tmp(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("galcas-cli-test-{}-{name}", std::process::id()));
    p
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn verified_checks_exit_zero() {
    let out = galcas(&["jacobi", "--l", "1/2", "--d", "2", "--extended"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    assert!(stdout(&out).contains("violations: 0"));

    let out = galcas(&["identity", "--l", "7/2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("points checked: 22"));
    assert!(stdout(&out).contains("nonzero residuals: 0"));
}

#[test]
fn mathematical_violations_exit_one() {
    // A bare Cartan generator is not central.
    let file = tmp("noncentral.json");
    std::fs::write(&file, r#"{"terms":[{"monomial":[["L0",1]],"coeff":"1"}]}"#).unwrap();
    let out = galcas(&["verify", file.to_str().unwrap(), "--l", "1/2", "--d", "1", "--extended"]);
    assert_eq!(out.status.code(), Some(1), "{out:?}");
    assert!(stdout(&out).contains("central: no"));
    std::fs::remove_file(&file).ok();
}

#[test]
fn configuration_errors_exit_two() {
    // The quartic needs the central element.
    let out = galcas(&["casimir", "quartic", "--l", "1/2", "--d", "1"]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");

    // No Pfaffian in odd dimension.
    let out = galcas(&["casimir", "pfaffian", "--l", "1/2", "--d", "3", "--extended"]);
    assert_eq!(out.status.code(), Some(2));

    // Integer l with the extension exists only at d = 2.
    let out = galcas(&["jacobi", "--l", "1", "--d", "3", "--extended"]);
    assert_eq!(out.status.code(), Some(2));

    // Unknown flags are usage errors.
    let out = galcas(&["dims", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));

    // Unreadable and malformed element files.
    let out = galcas(&["verify", "/nonexistent/x.json", "--l", "1/2", "--d", "1", "--extended"]);
    assert_eq!(out.status.code(), Some(2));
    let file = tmp("corrupt.json");
    std::fs::write(&file, "not json").unwrap();
    let out = galcas(&["verify", file.to_str().unwrap(), "--l", "1/2", "--d", "1", "--extended"]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_file(&file).ok();

    // An element naming generators outside the algebra.
    let file = tmp("alien.json");
    std::fs::write(&file, r#"{"terms":[{"monomial":[["C:3/2:1",1]],"coeff":"1"}]}"#).unwrap();
    let out = galcas(&["verify", file.to_str().unwrap(), "--l", "1/2", "--d", "1", "--extended"]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_file(&file).ok();
}

#[test]
fn constructed_invariants_round_trip_through_verify() {
    for (args, name) in [
        (vec!["casimir", "quartic", "--l", "1/2", "--d", "2", "--extended"], "quartic"),
        (vec!["casimir", "trace", "--k", "1", "--l", "1/2", "--d", "2", "--extended"], "trace"),
        (vec!["casimir", "pfaffian", "--l", "1/2", "--d", "2", "--extended"], "pfaffian"),
    ] {
        let file = tmp(&format!("roundtrip-{name}.json"));
        let mut full = args.clone();
        full.extend(["--format", "json", "--out", file.to_str().unwrap()]);
        let out = galcas(&full);
        assert_eq!(out.status.code(), Some(0), "{name}: {out:?}");

        let out = galcas(&["verify", file.to_str().unwrap(), "--l", "1/2", "--d", "2", "--extended"]);
        assert_eq!(out.status.code(), Some(0), "{name} not verified central: {out:?}");
        std::fs::remove_file(&file).ok();
    }
}

#[test]
fn catalog_json_lists_expected_invariants() {
    let out = galcas(&["casimir", "catalog", "--l", "1/2", "--d", "4", "--extended", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let names: Vec<&str> = v["elements"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["name"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["quartic", "trace1", "pfaffian"]);
}

#[test]
fn counting_is_deterministic_byte_for_byte() {
    let args = ["count", "--l", "1/2", "--d", "3", "--extended", "--format", "json"];
    let a = galcas(&args);
    let b = galcas(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);

    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["dim"], 13);
    assert_eq!(v["generic_rank"], 10);
    assert_eq!(v["invariant_count"], 3);
    assert_eq!(v["catalog_size"], 2);
    assert_eq!(v["reconciliation_offset"], 1);

    // The audited matrix is reproducible too.
    let m1 = tmp("matrix-1.json");
    let m2 = tmp("matrix-2.json");
    for m in [&m1, &m2] {
        let out = galcas(&[
            "count", "--l", "1/2", "--d", "3", "--extended", "--emit-matrix",
            m.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    let a = std::fs::read(&m1).unwrap();
    let b = std::fs::read(&m2).unwrap();
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["rows"], 13);
    assert_eq!(v["entries"].as_array().unwrap().len(), 13 * 13);
    std::fs::remove_file(&m1).ok();
    std::fs::remove_file(&m2).ok();
}

#[test]
fn grid_override_drives_the_sweeps() {
    let out = Command::new(env!("CARGO_BIN_EXE_galcas"))
        .args(["dims", "--format", "json"])
        .env("GALCAS_GRID", "1/2:1, 5/2:3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["l"], "1/2");
    assert_eq!(rows[0]["extended"], 6);
    assert_eq!(rows[1]["centerless"], 24);

    // Integer l away from d = 2 has no extended variant to report.
    let out = Command::new(env!("CARGO_BIN_EXE_galcas"))
        .args(["dims", "--format", "json"])
        .env("GALCAS_GRID", "1:3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v[0].get("extended").is_none());
    assert_eq!(v[0]["centerless"], 15);

    let out = Command::new(env!("CARGO_BIN_EXE_galcas"))
        .args(["dims"])
        .env("GALCAS_GRID", "nonsense")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // The identity sweep picks up the grid's l values.
    let out = Command::new(env!("CARGO_BIN_EXE_galcas"))
        .args(["identity", "--format", "json"])
        .env("GALCAS_GRID", "3/2:1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["l_values"], serde_json::json!(["3/2"]));
    assert_eq!(v["checked"], 10);
}
