use std::path::PathBuf;

use assert_cmd::Command;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn mpp() -> Command {
    let mut cmd = Command::cargo_bin("mpp").unwrap();
    cmd.env_remove("MPP_WORK_CAP");
    cmd
}

fn stdout_of(args: &[&str], file: Option<&str>, code: i32) -> String {
    let mut cmd = mpp();
    cmd.args(args);
    if let Some(f) = file {
        cmd.arg(data(f));
    }
    let out = cmd.assert().code(code).get_output().stdout.clone();
    String::from_utf8(out).unwrap()
}

#[test]
fn validate_exit_codes() {
    let ok = stdout_of(&["validate"], Some("p3.json"), 0);
    assert!(ok.contains("strict: true\nregular: true"));
    let bad = stdout_of(&["validate"], Some("not_strict.json"), 1);
    assert!(bad.contains("strict: false"));
    stdout_of(&["validate"], Some("malformed.json"), 2);
    stdout_of(&["validate"], Some("unknown_field.json"), 2);
    stdout_of(&["validate"], Some("does_not_exist.json"), 2);
}

#[test]
fn figure1_chain_facets_are_the_unit_square() {
    let out = stdout_of(&["polytope", "--family", "chain", "--emit", "facets"], Some("figure1.json"), 0);
    assert_eq!(out, "coordinates: x1 x2\n-1 0 <= 0\n0 -1 <= 0\n0 1 <= 1\n1 0 <= 1\n");
    let hrep = stdout_of(&["polytope", "--family", "chain", "--emit", "hrep"], Some("figure1.json"), 0);
    assert!(hrep.contains("1 1 <= 2\n"));
}

#[test]
fn diamond_order_vertices() {
    let out = stdout_of(&["polytope", "--emit", "vertices"], Some("diamond.json"), 0);
    assert_eq!(out, "(0, 0)\n(0, 2)\n(2, 0)\n(2, 2)\n");
}

#[test]
fn chain_order_needs_partition() {
    stdout_of(&["polytope", "--family", "chain-order"], Some("diamond.json"), 2);
    let out = stdout_of(&["polytope", "--family", "chain-order", "--emit", "vertices"], Some("chain_order.json"), 0);
    assert_eq!(out, "(0, 0)\n(0, 2)\n(2, 2)\n");
}

#[test]
fn hrep_round_trip() {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    for (file, family) in [("p3.json", "order"), ("figure1.json", "chain"), ("trapezoid.json", "order")] {
        let hrep = stdout_of(&["polytope", "--family", family, "--emit", "hrep"], Some(file), 0);
        let path = dir.join(format!("{file}.{family}.hrep"));
        std::fs::write(&path, &hrep).unwrap();
        let direct = stdout_of(&["polytope", "--family", family, "--emit", "vertices"], Some(file), 0);
        let reparsed = stdout_of(&["polytope", "--emit", "vertices", "--hrep", path.to_str().unwrap()], None, 0);
        assert_eq!(direct, reparsed);
    }
}

#[test]
fn two_level_reports() {
    let trap = stdout_of(&["two-level", "--method", "both"], Some("trapezoid.json"), 0);
    assert!(trap.contains("direct: false\n"));
    assert!(trap.contains("criterion: false\n"));
    assert!(trap.ends_with("AGREE\n"));
    let square = stdout_of(&["two-level", "--family", "chain", "--method", "both"], Some("figure1.json"), 0);
    assert!(square.contains("direct: true\ncriterion: true\nAGREE\n"));
    let p3 = stdout_of(&["two-level", "--method", "both"], Some("p3.json"), 0);
    assert!(p3.ends_with("AGREE\n"));
    // the order criterion needs a regular poset
    stdout_of(&["two-level", "--method", "criterion"], Some("figure1.json"), 1);
}

#[test]
fn ehrhart_reports() {
    let p3 = stdout_of(&["ehrhart", "--method", "both"], Some("p3.json"), 0);
    assert!(p3.contains("count: 1, 3, 3, 1\n"));
    assert!(p3.contains("formula: 1, 3, 3, 1\n"));
    assert!(p3.ends_with("MATCH\n"));
    let seg = stdout_of(&["ehrhart", "--method", "count"], Some("segment.json"), 0);
    assert!(seg.starts_with("count: 1, 1\n"));
    let p4 = stdout_of(&["ehrhart", "--method", "formula", "--builtin", "pm:4,1"], None, 0);
    assert!(p4.starts_with("formula: 1, 5, 9, 7, 2\n"));
    let chain = stdout_of(&["ehrhart", "--family", "chain", "--builtin", "pm:3,1"], None, 0);
    assert!(chain.contains("note:"));
    assert!(chain.ends_with("MATCH\n"));
}

#[test]
fn json_output() {
    let out = stdout_of(&["--json", "ehrhart", "--builtin", "pm:3,2"], None, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["command"], "ehrhart");
    assert_eq!(v["input"], "pm:3,2");
    assert_eq!(v["result"]["formula"], serde_json::json!(["1", "6", "12", "8"]));
    assert_eq!(v["result"]["match"], true);
}

#[test]
fn corpus_is_reproducible() {
    let args = ["corpus", "--seed", "1", "--trials", "12", "--max-unmarked", "4"];
    let first = stdout_of(&args, None, 0);
    let second = stdout_of(&args, None, 0);
    assert_eq!(first, second);
    assert!(first.ends_with("12/12 pass\n"));
    let empty = stdout_of(&["corpus", "--trials", "0"], None, 0);
    assert!(empty.ends_with("0/0 pass\n"));
}

#[test]
fn work_cap_from_environment() {
    let mut cmd = mpp();
    cmd.env("MPP_WORK_CAP", "1").args(["ehrhart", "--method", "formula", "--builtin", "pm:6,1"]);
    let out = cmd.assert().code(1).get_output().stderr.clone();
    assert!(String::from_utf8(out).unwrap().contains("cap"));
}

#[test]
fn usage_errors() {
    stdout_of(&["polytope", "--family", "cube"], Some("diamond.json"), 2);
    stdout_of(&["validate", "--builtin", "nonsense"], None, 2);
    stdout_of(&["validate"], None, 2);
}
