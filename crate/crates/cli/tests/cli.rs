use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn cis(args: &[&str], env: &[(&str, &str)], stdin: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_cis"));
    cmd.args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped());
    for (k, _) in std::env::vars().filter(|(k, _)| k.starts_with("CIS_")) {
        cmd.env_remove(k);
    }
    cmd.envs(env.iter().copied());
    let mut child = cmd.spawn().unwrap();
    child.stdin.take().unwrap().write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = cis(args, &[], None);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(s: &str) -> Value {
    serde_json::from_str(s.trim()).unwrap()
}

fn assert_schema(name: &str, value: &Value) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/schemas").join(name);
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator.iter_errors(value).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{name}: {errors:?}");
}

#[test]
fn construct_then_count() {
    let g6 = ok(&["construct", "--family", "mindeg-g", "--n", "5", "--param", "2"]);
    let out = cis(&["count"], &[], Some(&g6));
    assert!(out.status.success());
    let v = json(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(v["total"], 28);
    assert_schema("cis-count.schema.json", &v);
}

#[test]
fn count_complete_four() {
    let v = json(&ok(&["count", "--g6", "C~"]));
    assert_eq!(v["total"], 15);
    let oracle = json(&ok(&["count", "--g6", "C~", "--algorithm", "oracle"]));
    assert_eq!(oracle["total"], 15);
    assert_eq!(oracle["per_vertex"], v["per_vertex"]);
    assert_eq!(oracle["algorithm"], "subset-oracle");
}

#[test]
fn oracle_cap_is_configurable() {
    let out = cis(&["count", "--g6", "C~", "--algorithm", "oracle"], &[("CIS_ORACLE_CAP", "3")], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_graph6_reports_position() {
    let out = cis(&["count", "--g6", "C!"], &[], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("byte 1"));
    assert!(out.stdout.is_empty());
    let out = cis(&["invariants"], &[], Some("Cx~\n"));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("byte 2"));
}

#[test]
fn invariants_profile() {
    let v = json(&ok(&["invariants", "--g6", "DQc"]));
    assert_schema("invariant-profile.schema.json", &v);
    let g = ok(&["construct", "--family", "mindeg-g", "--n", "5", "--param", "2"]);
    let v = json(&ok(&["invariants", "--g6", g.trim()]));
    assert_eq!(v["min_degree"], 2);
    assert_eq!(v["independence"], 2);
    assert_eq!(v["vertex_cover"], 3);
    assert_eq!(v["vertex_connectivity"], 2);
    assert_eq!(v["edge_connectivity"], 2);
    assert_eq!(v["chromatic"], 4);
    assert_eq!(v["bridges"], 0);
}

#[test]
fn certify_chromatic() {
    let v = json(&ok(&["certify", "--theorem", "chromatic", "--n", "4", "--param", "2"]));
    assert_eq!(v["matches_construction"], true);
    assert_eq!(v["max_value"], 13);
    assert_schema("theorem-report.schema.json", &v);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["bogus"][..],
        &["construct", "--family", "mindeg-g", "--n", "5"],
        &["construct", "--family", "nope", "--n", "5"],
        &["construct", "--family", "mindeg-g", "--n", "5", "--param", "4"],
        &["certify", "--theorem", "min-degree", "--n", "8", "--param", "2"],
        &["certify", "--theorem", "chromatic", "--n", "4", "--param", "0"],
        &["certify", "--theorem", "girth", "--n", "4", "--param", "1"],
    ] {
        let out = cis(args, &[], None);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn empty_class_exit_3() {
    let out = cis(&["search-min", "--constraint", "vertex-conn", "--n", "4", "--param", "0"], &[], None);
    assert_eq!(out.status.code(), Some(3));
    let v = json(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(v["empty_class"], true);
    assert_schema("min-search-result.schema.json", &v);
}

#[test]
fn search_min_range() {
    let out = ok(&["search-min", "--constraint", "vertex-conn", "--n", "4", "--n-max", "6", "--param", "2"]);
    let lines: Vec<Value> = out.lines().map(json).collect();
    assert_eq!(lines.len(), 3);
    for (v, n) in lines.iter().zip(4u64..) {
        assert_eq!(v["min_value"], n * (n - 1) + 1);
        assert_schema("min-search-result.schema.json", v);
    }
}

#[test]
fn lemma_check_summary() {
    let v = json(&ok(&["lemma-check", "--trials", "40", "--max-part", "4", "--seed", "9"]));
    assert_eq!(v["trials"], 40);
    assert_eq!(v["holds"], 40);
    assert_schema("lemma-summary.schema.json", &v);
    assert_eq!(ok(&["lemma-check", "--trials", "40", "--seed", "9"]), ok(&["lemma-check", "--trials", "40", "--seed", "9"]));
}

#[test]
fn grid_is_deterministic_and_written() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("grid");
    let args = ["certify-grid", "--theorem", "bridges", "--n-max", "6", "--params", "all"];
    let serial = cis(&args, &[("CIS_WORKERS", "1")], None);
    let mut parallel_args = args.to_vec();
    parallel_args.extend(["--workers", "3", "--out", out_dir.to_str().unwrap()]);
    let parallel = cis(&parallel_args, &[("CIS_WORKERS", "1")], None);
    assert!(serial.status.success() && parallel.status.success());
    assert_eq!(serial.stdout, parallel.stdout);
    let stdout = String::from_utf8(serial.stdout).unwrap();
    for line in stdout.lines() {
        assert_schema("theorem-report.schema.json", &json(line));
    }
    assert_eq!(std::fs::read_to_string(out_dir.join("reports.jsonl")).unwrap(), stdout);
    let csv = std::fs::read_to_string(out_dir.join("summary.csv")).unwrap();
    assert!(csv.starts_with("theorem,n,param,max,unique,matches\n"));
    assert_eq!(csv.lines().count(), stdout.lines().count() + 1);
}

#[test]
fn config_file_sets_audit_rate() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("cis.conf");
    let args = ["certify", "--theorem", "min-degree", "--n", "5", "--param", "2"];

    std::fs::write(&conf, "audit_rate = 1\n").unwrap();
    let v = json(&String::from_utf8(cis(&args, &[("CIS_CONFIG", conf.to_str().unwrap())], None).stdout).unwrap());
    assert_eq!(v["audited"], v["class_size_labeled"]);

    std::fs::write(&conf, "audit_rate = 0.001\n").unwrap();
    let mut with_flag = args.to_vec();
    with_flag.extend(["--config", conf.to_str().unwrap()]);
    let v = json(&ok(&with_flag));
    let audited = v["audited"].as_u64().unwrap();
    assert!(audited < v["class_size_labeled"].as_u64().unwrap());

    // env beats the file, flags beat env
    let v = json(&String::from_utf8(cis(&with_flag, &[("CIS_AUDIT_RATE", "0")], None).stdout).unwrap());
    assert_eq!(v["audited"], 0);
    with_flag.extend(["--audit-rate", "1"]);
    let v = json(&String::from_utf8(cis(&with_flag, &[("CIS_AUDIT_RATE", "0")], None).stdout).unwrap());
    assert_eq!(v["audited"], v["class_size_labeled"]);
}

#[test]
fn unknown_config_key_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("cis.conf");
    std::fs::write(&conf, "threads = 2\n").unwrap();
    let out = cis(&["count", "--g6", "C~", "--config", conf.to_str().unwrap()], &[], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown key"));
    let out = cis(&["count", "--g6", "C~"], &[("CIS_THREADS", "2")], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn progress_stays_off_stdout() {
    let out = cis(&["-vv", "certify", "--theorem", "bridges", "--n", "5", "--param", "1"], &[], None);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("scanning order 5"));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.lines().count(), 1);
    json(&stdout);
}
