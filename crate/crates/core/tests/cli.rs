use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use whkit::algebra::function_algebra;
use whkit::exactlin::Scalar;
use whkit::groupoid::pair_groupoid;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn whkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_whkit"))
        .args(args)
        .env_remove("WHKIT_SEED")
        .output()
        .unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn passing_suites_exit_zero() {
    let pair = fixture("pair_groupoid_2.json");
    for args in [
        vec!["verify"],
        vec!["cointegrals", "--side", "right"],
        vec!["integrals"],
        vec!["classify"],
        vec!["dual"],
        vec!["frobenius", "--random-ideals", "3"],
    ] {
        let mut full = args.clone();
        full.push(path_str(&pair));
        let out = whkit(&full);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
    let out = whkit(&["--algebra", "convolution", "check-all", path_str(&fixture("z2_group.json"))]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn failing_check_exits_one_and_names_it() {
    let out = whkit(&["frobenius", path_str(&fixture("non_qf_algebra.json"))]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("first failing check: quasi_frobenius.lr_I_eq_I"), "{stderr}");
}

#[test]
fn mutated_bundle_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mutated.json");
    let w = function_algebra(&pair_groupoid(2)).perturb_delta(0, 0, Scalar::from(5)).unwrap();
    std::fs::write(&path, serde_json::to_string(&w.to_file()).unwrap()).unwrap();
    let out = whkit(&["verify", path_str(&path)]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("coassociativity"), "{stderr}");
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("absent.json");
    let out = whkit(&["verify", path_str(&missing)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("absent.json"));
    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "{\"kind\": \"monoid\"}").unwrap();
    assert_eq!(whkit(&["verify", path_str(&garbage)]).status.code(), Some(2));
}

#[test]
fn build_output_round_trips_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let bundle = dir.path().join("bundle.json");
    let out = whkit(&["--output", path_str(&bundle), "build", path_str(&fixture("pair_groupoid_2.json"))]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let out = whkit(&["--format", "json", "verify", path_str(&bundle)]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report["checks"].as_array().is_some_and(|c| !c.is_empty()));
}

#[test]
fn seed_from_environment_matches_flag() {
    let input = fixture("pair_groupoid_2.json");
    let flag = whkit(&["--format", "json", "frobenius", "--seed", "11", path_str(&input)]);
    let env = Command::new(env!("CARGO_BIN_EXE_whkit"))
        .args(["--format", "json", "frobenius", path_str(&input)])
        .env("WHKIT_SEED", "11")
        .output()
        .unwrap();
    assert_eq!(flag.status.code(), Some(0));
    assert_eq!(flag.stdout, env.stdout);
}

#[test]
fn check_all_json_is_deterministic() {
    let input = fixture("separability_c2.json");
    let a = whkit(&["--format", "json", "check-all", "--seed", "3", path_str(&input)]);
    let b = whkit(&["--format", "json", "check-all", "--seed", "3", path_str(&input)]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), b.status.code());
}
