use std::process::{Command, Output};

fn sr2(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sr2")).args(args).env("VARIETY_THREADS", "2").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn check_reports_per_semiring_verdicts() {
    let o = sr2(&["check", "x^2y ~ xy"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("holds in HSP(L2,R2,M2,D2,N2,T2,Z2,W2,Z7,Z8): true"));

    let o = sr2(&["check", "x + x ~ x", "--over", "L2,Z2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["holds"], false);
    assert_eq!(v["rows"].as_array().unwrap().len(), 2);
}

#[test]
fn bad_input_is_a_usage_error() {
    assert_eq!(sr2(&["check", "x + "]).status.code(), Some(2));
    assert_eq!(sr2(&["member", "Q9", "L2"]).status.code(), Some(2));
    assert_eq!(sr2(&["bogus"]).status.code(), Some(2));
}

#[test]
fn member_with_witness() {
    let o = sr2(&["member", "D2", "L2,R2"]);
    assert_eq!(o.status.code(), Some(1));
    let o = sr2(&["member", "Z2", "Z7", "--witness"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("separating identity"));
    assert_eq!(sr2(&["member", "L2", "L2,R2"]).status.code(), Some(0));
}

#[test]
fn lattice_exports() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("l.dot");
    let o = sr2(&["lattice", "--format", "dot", "--out", dot.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(std::fs::read_to_string(&dot).unwrap().starts_with("digraph"));

    let o = sr2(&["lattice", "--count"]);
    assert_eq!(stdout(&o).trim(), "800");

    let o = sr2(&["interval", "N2,T2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v.is_object());
}

#[test]
fn prove_checks_and_searches() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cube.json");
    std::fs::write(&path, sr2::acceptance::load_corpus("cube.json").unwrap()).unwrap();
    let o = sr2(&["prove", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    let found = dir.path().join("found.json");
    let o = sr2(&[
        "prove", "--search", "x^3 ~ x^2", "--axioms", "eq3,eq4", "--max-size", "8", "--out", found.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = sr2(&["prove", found.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));

    let o = sr2(&["prove", "--search", "x^3 ~ x^2", "--axioms", "eq3,eq4", "--max-frontier", "3"]);
    assert_eq!(o.status.code(), Some(3));
}
