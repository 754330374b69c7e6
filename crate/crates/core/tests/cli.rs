use std::process::{Command, Output};

use suq2::report::{Cell, Report};

fn suq2(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_suq2"))
        .args(args)
        .env_remove("SUQ2_T")
        .env_remove("SUQ2_NMAX")
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Report {
    Report::from_json(std::str::from_utf8(&out.stdout).unwrap()).expect("valid report json")
}

#[test]
fn rep_half_reports_unit_r() {
    let out = suq2(&["rep", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let table = r.tables.iter().find(|t| t.name == "r").unwrap();
    assert!(table.rows.contains(&vec![Cell::Int(1), Cell::Int(-1), Cell::Real(1.0)]));
}

#[test]
fn rep_zero_casimir() {
    let out = suq2(&["rep", "0"]);
    let r = report(&out);
    let table = r.tables.iter().find(|t| t.name == "casimir").unwrap();
    let lambda = 0.3f64.exp();
    match table.rows[0][1] {
        Cell::Real(v) => assert!((v - 2.0 * (lambda + 1.0 / lambda)).abs() < 1e-12),
        ref other => panic!("unexpected cell {other:?}"),
    }
}

#[test]
fn rep_one_middle_r_squared() {
    let r = report(&suq2(&["rep", "2"]));
    let table = r.tables.iter().find(|t| t.name == "r").unwrap();
    let lambda = 0.3f64.exp();
    let r0 = table.rows.iter().find(|row| row[1] == Cell::Int(0)).unwrap();
    match r0[2] {
        Cell::Real(v) => assert!((v * v - (lambda + 1.0 / lambda)).abs() < 1e-12),
        ref other => panic!("unexpected cell {other:?}"),
    }
}

#[test]
fn invalid_config_exits_two() {
    assert_eq!(suq2(&["--t", "0", "verify", "hopf"]).status.code(), Some(2));
    assert_eq!(suq2(&["--t", "-1", "verify", "hopf"]).status.code(), Some(2));
    assert_eq!(suq2(&["--tol-abs", "0", "verify", "hopf"]).status.code(), Some(2));
    assert_eq!(suq2(&["verify", "nonsense"]).status.code(), Some(2));
}

#[test]
fn env_override_is_honoured() {
    let out = Command::new(env!("CARGO_BIN_EXE_suq2"))
        .args(["verify", "hopf"])
        .env("SUQ2_T", "0.25")
        .output()
        .unwrap();
    assert_eq!(report(&out).config.t, 0.25);
}

#[test]
fn failed_check_exits_one() {
    // An absurdly tight tolerance makes floating-point residuals fail.
    let out = suq2(&["--tol-abs", "1e-300", "--tol-rel", "1e-300", "--nmax", "2", "verify", "hopf"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!report(&out).pass);
}

#[test]
fn verify_all_is_deterministic_and_passes() {
    let args = ["--nmax", "2", "--seed", "9", "verify", "all"];
    let a = suq2(&args);
    let b = suq2(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let r = report(&a);
    assert_eq!(r.schema, 1);
    assert_eq!(r.summary.failed, 0);
    assert!(r.checks.windows(2).all(|w| w[0].id < w[1].id));
}

#[test]
fn json_report_round_trips_through_schema() {
    let out = suq2(&["cg", "1", "2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let parsed = Report::from_json(&text).unwrap();
    assert_eq!(parsed.to_json().unwrap(), text);
}

#[test]
fn tables_written_to_directory() {
    let dir = tempfile::tempdir().unwrap();
    let out = suq2(&["--nmax", "2", "--format", "csv", "--out", dir.path().to_str().unwrap(), "tables"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    for name in ["integrals", "modular_element", "delta_h", "haar_quadratic"] {
        let body = std::fs::read_to_string(dir.path().join(format!("{name}.csv"))).unwrap();
        assert!(body.lines().next().unwrap().starts_with("2"), "{name}: {body}");
    }
    let delta = std::fs::read_to_string(dir.path().join("modular_element.csv")).unwrap();
    let lambda = 0.3f64.exp();
    let row = delta.lines().find(|l| l.starts_with("1,1,")).unwrap();
    let v: f64 = row.split(',').nth(2).unwrap().parse().unwrap();
    assert!((v - lambda * lambda).abs() < 1e-12);
}

#[test]
fn tables_into_unwritable_path_fails() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    std::fs::write(&blocker, "x").unwrap();
    let out = suq2(&["--out", blocker.join("sub").to_str().unwrap(), "tables"]);
    assert_ne!(out.status.code(), Some(0));
}

#[test]
fn csv_verify_prints_checks() {
    let out = suq2(&["--format", "csv", "verify", "hopf"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("# checks\nid,identity,residual,tolerance,pass\n"));
}
