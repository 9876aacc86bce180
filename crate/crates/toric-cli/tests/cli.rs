//! End-to-end checks of the command-line surface: subcommands, exit codes,
//! and output modes.

use std::process::Command;

fn toric() -> Command {
    Command::new(env!("CARGO_BIN_EXE_toric"))
}

fn write_temp(name: &str, contents: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join("toric-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

const PASSING_SCENARIO: &str = r#"{
  "schema": "toric-scenario/1",
  "name": "smoke",
  "source": { "builder": { "name": "weighted_projective", "weights": [1, 1, 2] } },
  "checks": [
    { "id": "group", "op": "class_group", "path": "/group", "expected": "Z" },
    { "id": "class", "op": "classify", "path": "/class", "expected": "Canonical" }
  ]
}"#;

#[test]
fn analyze_passing_scenario_exits_zero() {
    let path = write_temp("passing.json", PASSING_SCENARIO);
    let out = toric().arg("analyze").arg(&path).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("PASS smoke/group"));
    assert!(text.contains("2 passed, 0 failed"));
}

#[test]
fn analyze_failing_check_exits_one() {
    let scenario = PASSING_SCENARIO.replace("Canonical", "Terminal");
    let path = write_temp("failing.json", &scenario);
    let out = toric().arg("analyze").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("FAIL smoke/class"));
    assert!(text.contains("computed: \"Canonical\""));
}

#[test]
fn malformed_scenario_exits_two() {
    let path = write_temp("broken.json", "{ not json");
    let out = toric().arg("analyze").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = toric().arg("analyze").arg("/no/such/file.json").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn analyze_json_mode_emits_schema() {
    let path = write_temp("json-mode.json", PASSING_SCENARIO);
    let out = toric()
        .args(["analyze", "--json", "--deterministic"])
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], "toric-report/1");
    assert_eq!(v["summary"]["failed"], 0);
    assert!(v.get("timestamp").is_none(), "deterministic mode drops the timestamp");
}

#[test]
fn paper_suite_filter_and_exit() {
    let out = toric().args(["paper-suite", "--filter", "quotients"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("quotient-a1"));
    assert!(!text.contains("flip-wps5"));
}

#[test]
fn fan_subcommand_builders() {
    let out = toric()
        .args(["fan", "weighted_projective=1,1,2", "--show=classify,is_complete", "--json"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"]["classify"]["class"], "Canonical");
    assert_eq!(v["results"]["is_complete"], true);

    let out = toric().args(["fan", "product=3x2", "--show=class_group", "--json"]).output().unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"]["class_group"]["free_rank"], 2);

    let out = toric().args(["fan", "bogus=1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn explicit_fan_scenario_round_trips() {
    let scenario = r#"{
      "name": "node-fan",
      "source": { "fan": {
        "ambient_rank": 3,
        "rays": [[0,0,1],[1,0,1],[0,1,1],[1,1,1]],
        "max_cones": [[0,1,2,3]]
      } },
      "checks": [
        { "op": "classify", "path": "/class", "expected": "Terminal" },
        { "op": "cartier_test", "args": { "divisor": [1,0,0,0] },
          "path": "/result", "expected": "NotQCartier" }
      ]
    }"#;
    let path = write_temp("node.json", scenario);
    let out = toric().arg("analyze").arg(&path).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
}
