//! End-to-end runs of the `fundament` binary: output shape and exit codes.

use std::process::{Command, Output};

use serde_json::Value;

const INTRO: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/intro.grp");
const COVERS: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/covers.grp");

fn fundament(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fundament")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn isomorphic_prints_true_last() {
    let o = fundament(&["-f", INTRO, "isomorphic", "fprod(eta1,eta1)", "fprod(eta0,eta1)"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().last(), Some("true"));
}

#[test]
fn series_and_h2_examples() {
    let o = fundament(&["series", "C4->1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("kernel sizes: [4, 2, 1]"));
    let o = fundament(&["h2", "C2", "F2triv"]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().any(|l| l == "dim_F = 1"));
}

#[test]
fn json_documents_carry_the_schema_version() {
    let o = fundament(&["--json", "-f", COVERS, "dominates", "eta1", "fprod(eta1,eta1)"]);
    assert!(o.status.success());
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["command"], "dominates");
    assert_eq!(doc["arguments"], serde_json::json!(["eta1", "fprod(eta1,eta1)"]));
    assert_eq!(doc["result"]["value"], true);
}

#[test]
fn decision_commands_end_with_a_boolean_line() {
    let cases: [&[&str]; 4] = [
        &["dominates", "eta1", "eta0"],
        &["isomorphic", "eta0", "eta0"],
        &["lift", "id(C2)", "eta1^2", "eta1"],
        &["check-square", "--property", "semi-cartesian", "eta1", "eta1", "id(C2)", "id(C2)"],
    ];
    for args in cases {
        let mut all = vec!["-f", COVERS];
        all.extend_from_slice(args);
        let o = fundament(&all);
        assert!(o.status.success(), "{args:?}");
        let out = stdout(&o);
        let last = out.lines().last().unwrap();
        assert!(last == "true" || last == "false", "{args:?}: {out}");
    }
}

#[test]
fn errors_exit_nonzero() {
    let o = fundament(&["-f", INTRO, "series", "eta9"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown reference `eta9`"));

    let o = fundament(&["--json", "--max-order", "50", "series", "S5->1"]);
    assert_eq!(o.status.code(), Some(1));
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["error"]["kind"], "OrderCapExceeded");

    let o = fundament(&["-f", "/nonexistent/workspace.grp", "series", "C2->1"]);
    assert_eq!(o.status.code(), Some(1));

    let o = fundament(&["dominates", "C2->1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = fundament(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn seed_is_recorded() {
    let o = fundament(&["--json", "--seed", "7", "series", "C2->1"]);
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["seed"], 7);
}

#[test]
fn order_64_commands_finish_quickly() {
    let start = std::time::Instant::now();
    for args in [
        ["invariants", "fprod(eta1,eta1,eta1,eta0,eta0)"],
        ["decompose", "fprod(eta1,eta1,eta1,eta0,eta0)"],
        ["series", "then(fprod(eta1,eta1,eta1,eta0,eta0), C2->1)"],
    ] {
        let o = fundament(&["-f", INTRO, args[0], args[1]]);
        assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
    assert!(start.elapsed().as_secs() < 30);
}
