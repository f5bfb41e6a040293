use std::path::Path;
use std::process::{Command, Output};

use hyperpack_core::pipeline::parse_report;

fn hyperpack(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperpack")).args(args).output().unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_pack_validate_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let h = dir.path().join("h.txt");
    let cycles = dir.path().join("c.txt");
    let report = dir.path().join("r.json");
    let out = hyperpack(&["gen", "--n", "12", "--k", "3", "--p", "0.7", "--seed", "4", "--out", path(&h)]);
    assert!(out.status.success());

    let out = hyperpack(&[
        "pack", "--in", path(&h), "--ell", "2", "--r", "40", "--seed", "1",
        "--cycles-out", path(&cycles), "--report-out", path(&report),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let parsed = parse_report(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(parsed.instances.len(), 40);

    let out = hyperpack(&["validate", "--in", path(&h), "--cycles", path(&cycles)]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("ok"));
}

#[test]
fn generated_input_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    for out in [&a, &b] {
        let status = hyperpack(&["pack", "--gen", "12,3,0.6", "--ell", "2", "--r", "20", "--seed", "9", "--cycles-out", path(out)]);
        assert!(status.status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn divisibility_failure_exits_with_two() {
    let out = hyperpack(&["pack", "--gen", "13,3,0.6", "--ell", "2", "--r", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unsupported_case_exits_with_three() {
    let out = hyperpack(&["pack", "--gen", "12,3,0.6", "--ell", "1", "--r", "5"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn malformed_hypergraph_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let h = dir.path().join("bad.txt");
    std::fs::write(&h, "3 6\n1 2 9\n").unwrap();
    let out = hyperpack(&["pack", "--in", path(&h), "--ell", "2", "--r", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));
}

#[test]
fn tampered_packing_fails_validation() {
    let dir = tempfile::tempdir().unwrap();
    let h = dir.path().join("h.txt");
    let cycles = dir.path().join("c.txt");
    hyperpack(&["gen", "--n", "6", "--k", "3", "--p", "1.0", "--out", path(&h)]);
    std::fs::write(&cycles, "cycle 2\n1 2 3 4 5 6\n1 2 3\n3 4 5\n1 5 6\ncycle 2\n1 2 3 4 5 6\n1 2 3\n3 4 5\n1 5 6\n").unwrap();
    let out = hyperpack(&["validate", "--in", path(&h), "--cycles", path(&cycles)]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oracle_agrees_with_flow_on_small_graph() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.txt");
    std::fs::write(&g, "3\n1 1\n1 2\n1 3\n2 1\n2 2\n2 3\n3 1\n3 2\n3 3\n").unwrap();
    let out = hyperpack(&["oracle-pm", "--in", path(&g)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "oracle 3 flow 3");
}

#[test]
fn audit_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let h = dir.path().join("h.txt");
    let report = dir.path().join("a.json");
    hyperpack(&["gen", "--n", "9", "--k", "3", "--p", "1.0", "--out", path(&h)]);
    let out = hyperpack(&["audit", "--in", path(&h), "--ell", "2", "--report-out", path(&report)]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&report).unwrap();
    assert!(text.contains("P_a"));
}
