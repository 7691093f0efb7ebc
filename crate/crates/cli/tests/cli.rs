use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_leafcalc")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    let s = String::from_utf8(out.stdout.clone()).unwrap();
    assert!(s.ends_with('\n') && s.trim_end().lines().count() == 1, "{s:?}");
    serde_json::from_str(&s).unwrap()
}

#[test]
fn chern_examples() {
    let out = run(&["chern", "--d", "2", "--k", "2"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["chern"], serde_json::json!([2]));
    assert_eq!(v["intersections"], serde_json::json!([1, -2]));
    assert_eq!(v["dual_intersections"], serde_json::json!([1, 2]));
    assert_eq!(v["seed"], 0);

    let v = json(&run(&["chern", "--d", "4", "--k", "3", "--s", "3"]));
    assert_eq!(v["intersection"], -1);

    let out = run(&["chern", "--d", "2", "--k", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["kind"], "usage");
}

#[test]
fn usage_errors_are_json() {
    for args in [&["chern", "--d", "two", "--k", "1"][..], &["frobnicate"], &["secant", "--n", "6", "--d", "3"]] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(json(&out)["error"]["message"].is_string());
    }
}

#[test]
fn classify_odd_dprime() {
    let out = run(&["classify", "--curve", "0,1@Fp:10007", "--D", "O:2", "--Dprime", "O:4;2,3:1"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["surface"], "Sigma_1");
    assert_eq!(v["affine"], true);
    assert_eq!(v["match"], true);
}

#[test]
fn secant_probes() {
    let v = json(&run(&["secant", "--n", "8", "--d", "3", "--probe", "sec2-off-curve"]));
    assert_eq!(v["verdict"], "smooth");
    let v = json(&run(&["secant", "--n", "8", "--d", "3", "--probe", "curve", "--seed", "5"]));
    assert_eq!(v["verdict"], "singular");
    assert_eq!(v["seed"], 5);
    let v = json(&run(&["secant", "--n", "8", "--d", "3", "--z", "O:2;3,6:1"]));
    assert_eq!((v["verdict"].as_str(), v["codim"].as_u64()), (Some("smooth"), Some(3)));
}

#[test]
fn splitting_from_stdin() {
    let pencil = r#"{"dprime":3,"k":2,"A":[[1,0],[0,1],[0,0]],"B":[[0,0],[1,0],[0,1]]}"#;
    let mut child = Command::new(env!("CARGO_BIN_EXE_leafcalc"))
        .args(["splitting", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(pencil.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    assert_eq!(json(&out)["splitting_type"], serde_json::json!([2]));
}

#[test]
fn verify_and_determinism() {
    let a = run(&["verify", "--suite", "chow", "--seed", "3"]);
    assert!(a.status.success());
    assert_eq!(json(&a)["passed"], true);
    let b = run(&["verify", "--suite", "chow", "--seed", "3"]);
    assert_eq!(a.stdout, b.stdout);
    let s1 = run(&["secant", "--n", "9", "--d", "4", "--seed", "11"]);
    let s2 = run(&["secant", "--n", "9", "--d", "4", "--seed", "11"]);
    assert_eq!(s1.stdout, s2.stdout);
}

#[test]
fn text_mode() {
    let out = run(&["chern", "--d", "3", "--k", "1", "--text"]);
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("chern: [1,1]"), "{s}");
}
