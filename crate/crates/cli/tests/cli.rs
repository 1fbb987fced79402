use std::path::PathBuf;
use std::process::{Command, Output};

use kbundle_cli::report::{Report, TaskResult};
use serde_json::Value;

const QUADRICS: &str = "X^2 - Y^2,X^2 - Z^2,X*Y,X*Z,Y*Z";

fn job(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../jobs").join(name)
}

fn kbundle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kbundle"))
        .args(args)
        .output()
        .expect("binary runs")
}

/// Runs with `--json-out -` and parses the report.
fn report(args: &[&str]) -> (Report, i32) {
    let mut all = args.to_vec();
    all.extend(["--json-out", "-"]);
    let out = kbundle(&all);
    let text = String::from_utf8(out.stdout).unwrap();
    let r = Report::from_json(&text).unwrap_or_else(|e| panic!("{e}: {text}"));
    (r, out.status.code().unwrap())
}

fn stability(r: &Report) -> Value {
    match r.result.as_ref().unwrap() {
        TaskResult::Check { report, .. } => serde_json::to_value(report.stability).unwrap(),
        other => panic!("not a check result: {other:?}"),
    }
}

#[test]
fn quadrics_are_stable_after_the_selfdual_upgrade() {
    let (r, code) = report(&["check", "--syzygy", QUADRICS, "--upgrade", "selfdual"]);
    assert_eq!(code, 0);
    assert_eq!(stability(&r), "proven_via_self_duality");
    let v: Value = serde_json::to_value(&r.result).unwrap();
    assert_eq!(v["report"]["verdict"], "semistable");
}

#[test]
fn job_file_and_flags_give_the_same_report() {
    let (a, _) = report(&["check", job("five-quadrics.toml").to_str().unwrap()]);
    let (b, _) = report(&["check", "--syzygy", QUADRICS, "--upgrade", "selfdual"]);
    assert_eq!(a.result, b.result);
}

#[test]
fn pullback_transfers_stability() {
    let (r, code) = report(&[
        "check",
        "--syzygy",
        QUADRICS,
        "--pullback",
        "2",
        "--upgrade",
        "selfdual",
    ]);
    assert_eq!(code, 0);
    let Some(TaskResult::Check { pullback: Some(p), .. }) = &r.result else {
        panic!()
    };
    assert_eq!(p.k, 2);
    assert_eq!(
        serde_json::to_value(p.report.stability).unwrap(),
        "proven_via_self_duality"
    );
}

#[test]
fn exterior_square_sections_of_the_dual_bundle() {
    let (r, code) = report(&["sections", job("five-monomials-dual.toml").to_str().unwrap()]);
    assert_eq!(code, 0);
    let Some(TaskResult::Sections { q, table, .. }) = &r.result else {
        panic!()
    };
    assert_eq!(*q, 2);
    let dims: Vec<(i64, usize)> = table.iter().map(|row| (row.twist, row.dim)).collect();
    assert_eq!(dims[0], (-6, 0));
    assert_eq!(dims[1].0, -5);
    assert!(dims[1].1 > 0);
}

#[test]
fn twists_flag_accepts_negative_ranges() {
    let dual = job("five-monomials-dual.toml");
    let (r, _) = report(&[
        "sections",
        dual.to_str().unwrap(),
        "--kind",
        "exterior",
        "--q",
        "2",
        "--twists",
        "-7..-6",
    ]);
    let Some(TaskResult::Sections { table, .. }) = &r.result else {
        panic!()
    };
    assert!(table.iter().all(|row| row.dim == 0));
    assert_eq!(table.len(), 2);
}

#[test]
fn malformed_polynomial_is_an_input_error() {
    let out = kbundle(&["check", "--syzygy", "X^2 + ,Y^2"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("parse error"), "{err}");
    assert!(err.contains("generator 1"), "{err}");
}

#[test]
fn juxtaposition_is_rejected() {
    let (r, code) = report(&["check", "--syzygy", "XY,X^2,Y^2"]);
    assert_eq!(code, 1);
    assert!(r.result.is_none());
    assert_eq!(serde_json::to_value(&r.error.unwrap().kind).unwrap(), "input");
}

#[test]
fn unknown_job_keys_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.toml");
    std::fs::write(&path, "[task]\nengnie = \"gb\"\n").unwrap();
    let out = kbundle(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn degree_cap_exits_two() {
    let (r, code) = report(&["check", "--syzygy", QUADRICS, "--max-degree", "1"]);
    assert_eq!(code, 2);
    assert!(r.result.is_none());
    assert_eq!(serde_json::to_value(&r.error.unwrap().kind).unwrap(), "resource");
}

#[test]
fn unstable_family_has_a_witness() {
    let (r, code) = report(&["check", job("unstable-monomials.toml").to_str().unwrap()]);
    assert_eq!(code, 0);
    let Some(TaskResult::Check { report, criteria, .. }) = &r.result else {
        panic!()
    };
    let w = report.witness.as_ref().unwrap();
    assert_eq!((w.q, w.degree, w.verified), (2, 9, true));
    assert!(criteria.brenner.is_some());
}

#[test]
fn langer_bound() {
    let (r, code) = report(&["restrict", job("langer.toml").to_str().unwrap()]);
    assert_eq!(code, 0);
    let Some(TaskResult::Restrict { bound }) = &r.result else {
        panic!()
    };
    assert_eq!(bound.k_min, 61);
}

#[test]
fn flenner_bound_from_flags() {
    let (r, _) = report(&[
        "restrict",
        "--theorem",
        "flenner",
        "--n-dim",
        "2",
        "--rank",
        "4",
        "--codim",
        "1",
        "--known",
        "semistable",
    ]);
    let Some(TaskResult::Restrict { bound }) = &r.result else {
        panic!("{r:?}")
    };
    assert_eq!(bound.k_min, 7);
}

#[test]
fn closure_of_the_quadrics() {
    let (r, code) = report(&["closure", job("closure-quadrics.toml").to_str().unwrap()]);
    assert_eq!(code, 0);
    let Some(TaskResult::Closure {
        threshold, in_closure, ..
    }) = &r.result
    else {
        panic!()
    };
    assert_eq!(threshold.min_degree, 3);
    assert_eq!(*in_closure, Some(true));
}

#[test]
fn validate_flags_a_non_surjective_map() {
    let (r, code) = report(&["validate", "--syzygy", "X^2,Y^2"]);
    assert_eq!(code, 1);
    let Some(TaskResult::Validate { valid, issues, .. }) = &r.result else {
        panic!()
    };
    assert!(!valid);
    assert!(!issues.is_empty());
}

#[test]
fn engines_cross_check_over_a_prime() {
    let (r, code) = report(&["check", "--syzygy", QUADRICS, "--engine", "both", "--field", "fp:101"]);
    assert_eq!(code, 0, "{r:?}");
    assert_eq!(stability(&r), "undetermined");
}

#[test]
fn reports_are_deterministic_and_round_trip() {
    let args = [
        "check",
        "--syzygy",
        QUADRICS,
        "--upgrade",
        "selfdual",
        "--pullback",
        "2",
    ];
    let (mut a, _) = report(&args);
    let (mut b, _) = report(&args);
    a.timing.elapsed_ms = 0;
    b.timing.elapsed_ms = 0;
    assert_eq!(a.to_json(), b.to_json());
    assert_eq!(Report::from_json(&a.to_json()).unwrap(), a);
}

#[test]
fn sequential_flag_gives_the_same_report() {
    let (mut a, _) = report(&["check", "--syzygy", QUADRICS]);
    let (mut b, _) = report(&["check", "--syzygy", QUADRICS, "--sequential"]);
    a.timing.elapsed_ms = 0;
    b.timing.elapsed_ms = 0;
    assert_eq!(a.result, b.result);
}

#[test]
fn json_out_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = kbundle(&[
        "restrict",
        job("langer.toml").to_str().unwrap(),
        "--json-out",
        path.to_str().unwrap(),
    ]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("k_min = 61"));
    let r = Report::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r.schema, kbundle_cli::report::SCHEMA_VERSION);
}

#[test]
fn command_must_match_the_job_kind() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("j.toml");
    std::fs::write(&path, "[task]\nkind = \"closure\"\n").unwrap();
    let out = kbundle(&["restrict", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn frobenius_membership_on_an_elliptic_curve() {
    let base = [
        "closure", "--field", "fp:7", "--ideal", "X^2,Y^2,Z^2", "--curve", "X^3+Y^3+Z^3", "--frobenius-q", "7",
    ];
    let (r, code) = report(&[&base[..], &["--element", "X*Y", "--assume", "strongly-semistable"]].concat());
    assert_eq!(code, 0);
    let Some(TaskResult::Closure { genus, in_closure, .. }) = &r.result else { panic!() };
    assert_eq!((*genus, *in_closure), (Some(1), Some(false)));
    let (_, code) = report(&[&base[..], &["--element", "X*Y"]].concat());
    assert_eq!(code, 1, "positive characteristic needs the assumption");
}
