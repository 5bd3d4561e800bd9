use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

const DOC: &str = r#"{
  "schema": 1,
  "groups": {
    "S3": {"catalog": {"name": "symmetric", "n": 3}},
    "Z2": {"catalog": {"name": "cyclic", "n": 2}}
  },
  "actions": {
    "swap": {"group": "Z2", "points": ["a", "b"], "generators": [{"element": "1", "permutation": [1, 0]}]},
    "fixed": {"group": "Z2", "points": ["p"], "generators": [{"element": "1", "permutation": [0]}]}
  },
  "groupoids": {
    "X": {"translation": "swap"},
    "point": {"unit": ["p"]},
    "ab": {"unit": ["a", "b"]}
  },
  "tasks": [
    {"command": "stable", "groupoid": "S3", "n": 0},
    {"command": "morita", "left": "X", "right": "point"}
  ]
}"#;

fn write_doc(name: &str, body: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(format!("{name}.json"));
    std::fs::write(&path, body).unwrap();
    path
}

fn run(doc: &PathBuf, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbisect"))
        .arg("--input")
        .arg(doc)
        .args(args)
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn stable_zero_of_s3_has_rank_four() {
    let doc = write_doc("stable", DOC);
    let v = json(&run(&doc, &["stable", "S3", "--n", "0"]));
    assert_eq!(v["reduced"]["total"]["free_rank"], 4);
    assert_eq!(v["reduced"]["components"].as_array().unwrap().len(), 4);
}

#[test]
fn free_swap_is_morita_equivalent_to_a_point() {
    let doc = write_doc("morita", DOC);
    let v = json(&run(&doc, &["morita", "X", "point"]));
    assert_eq!(v["equivalent"], true);
    assert_eq!(v["certificate_verified"], true);
    assert_eq!(v["certificate"].as_array().unwrap().len(), 1);

    let v = json(&run(&doc, &["morita", "X", "Z2"]));
    assert_eq!(v["equivalent"], false);
    assert!(v["certificate"].is_null());
}

#[test]
fn unit_groupoid_has_one_trivial_stratum() {
    let doc = write_doc("sectors", DOC);
    let v = json(&run(&doc, &["sectors", "ab"]));
    let strata = v["strata"].as_array().unwrap();
    assert_eq!(strata.len(), 1);
    assert_eq!(strata[0]["order"], 1);
    assert_eq!(strata[0]["size"], 2);
}

#[test]
fn homology_and_pi_of_s3() {
    let doc = write_doc("homology", DOC);
    let v = json(&run(&doc, &["homology", "S3", "--degree", "1"]));
    assert_eq!(v["group"]["torsion"], serde_json::json!([2]));
    let v = json(&run(&doc, &["pi", "S3", "--base", "0", "--n", "1"]));
    assert_eq!(v["group"]["order"], 6);
    let v = json(&run(
        &doc,
        &["extended-pi", "S3", "--base", "0", "--group", "1", "--n", "1"],
    ));
    assert_eq!(v["group"]["order"], 2);
}

#[test]
fn tom_dieck_of_a_fixed_point() {
    let doc = write_doc("tomdieck", DOC);
    let v = json(&run(&doc, &["tomdieck", "--action", "fixed", "--n", "0"]));
    assert_eq!(v["total"]["free_rank"], 2);
    assert_eq!(v["consistent"], true);
}

#[test]
fn tasks_run_in_order() {
    let doc = write_doc("tasks", DOC);
    let v = json(&run(&doc, &["tasks"]));
    let tasks = v["tasks"].as_array().unwrap();
    assert_eq!(tasks.len(), 2);
    assert_eq!(tasks[0]["command"], "stable");
    assert_eq!(tasks[1]["command"], "morita");
}

#[test]
fn output_is_deterministic() {
    let doc = write_doc("determinism", DOC);
    for args in [
        &["tasks"][..],
        &["sectors", "S3"],
        &["orbit-diagram", "S3", "--base", "0"],
        &["--text", "reduced", "S3"],
    ] {
        let a = run(&doc, args);
        let b = run(&doc, args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn text_output_is_plain() {
    let doc = write_doc("text", DOC);
    let out = run(&doc, &["--text", "homology", "S3", "--degree", "1"]);
    assert!(out.status.success());
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("display: Z/2"), "{s}");
}

#[test]
fn input_errors_exit_with_two() {
    let doc = write_doc("errors", DOC);
    assert_eq!(run(&doc, &["sectors", "missing"]).status.code(), Some(2));
    assert_eq!(run(&doc, &["stable", "S3", "--n", "2"]).status.code(), Some(2));
    assert_eq!(
        run(&doc, &["pi", "S3", "--base", "nowhere", "--n", "1"]).status.code(),
        Some(2)
    );

    let bad = write_doc("bad_schema", r#"{"schema": 7}"#);
    let out = run(&bad, &["check"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("schema"));

    let unknown = write_doc("unknown_field", r#"{"schema": 1, "extra": 0}"#);
    assert_eq!(run(&unknown, &["check"]).status.code(), Some(2));

    let no_input = Command::new(env!("CARGO_BIN_EXE_orbisect"))
        .arg("check")
        .output()
        .unwrap();
    assert_eq!(no_input.status.code(), Some(2));
}

#[test]
fn caps_exit_with_three() {
    let doc = write_doc("caps", DOC);
    assert_eq!(run(&doc, &["--order-cap", "4", "check"]).status.code(), Some(3));
    let out = run(&doc, &["--simplex-budget", "10", "homology", "S3", "--degree", "2"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn check_round_trips_the_document() {
    let doc = write_doc("check", DOC);
    let first = run(&doc, &["check"]);
    assert!(first.status.success());
    let again = write_doc("check_again", &String::from_utf8(first.stdout.clone()).unwrap());
    assert_eq!(run(&again, &["check"]).stdout, first.stdout);
}

#[test]
fn tom_dieck_checks_the_named_group() {
    let doc = write_doc("tomdieck_group", DOC);
    let v = json(&run(&doc, &["tomdieck", "--group", "Z2", "--action", "X", "--n", "1"]));
    assert_eq!(v["total"]["torsion"], serde_json::json!([2]));
    assert_eq!(
        run(&doc, &["tomdieck", "--group", "S3", "--action", "fixed", "--n", "0"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn selfcheck_is_seeded() {
    let go = |seed: &str| {
        Command::new(env!("CARGO_BIN_EXE_orbisect"))
            .args(["--seed", seed, "selfcheck", "--count", "10"])
            .output()
            .unwrap()
    };
    let (a, b) = (go("11"), go("11"));
    let v = json(&a);
    assert_eq!(v["failures"], serde_json::json!([]));
    assert_eq!(a.stdout, b.stdout);
}
