use std::process::{Command, Output};

use serde_json::Value;

fn vf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vf")).args(args).output().expect("runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let out = vf(args);
    let code = out.status.code().unwrap();
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, v)
}

fn without_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timing_ms");
    v
}

#[test]
fn bfun_cusp() {
    let (code, v) = json(&["bfun", "--vars", "x,y", "--f", "x^2 + y^3"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["bfunction"]["factored"], "(s+1)(s+5/6)(s+7/6)");
    assert_eq!(v["result"]["certificate"]["verified"], true);
    assert_eq!(v["command"], "bfun");
}

#[test]
fn text_format() {
    let out = vf(&["bfun", "--vars", "x", "--f", "x", "--format", "text"]);
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("b_f(s) = (s+1)"));
}

#[test]
fn output_is_deterministic() {
    let args = ["hmi", "--vars", "x,y", "--f", "x^2 + y^3", "--alpha", "9/10", "--deg-bound", "4"];
    let (_, a) = json(&args);
    let (_, b) = json(&args);
    assert_eq!(
        serde_json::to_string(&without_timing(a)).unwrap(),
        serde_json::to_string(&without_timing(b)).unwrap()
    );
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(vf(&["bfun", "--vars", "x,t", "--f", "x"]).status.code(), Some(2));
    assert_eq!(vf(&["bfun", "--vars", "x,x", "--f", "x"]).status.code(), Some(2));
    assert_eq!(vf(&["bfun", "--vars", "x", "--f", "y"]).status.code(), Some(2));
    assert_eq!(vf(&["bfun", "--vars", "x", "--f", "2 x"]).status.code(), Some(2));
    assert_eq!(vf(&["hmi", "--vars", "x", "--f", "x"]).status.code(), Some(2));
    assert_eq!(vf(&["nosuchcommand"]).status.code(), Some(2));
    assert_eq!(vf(&["bfun", "--vars", "x", "--f", "3"]).status.code(), Some(2));
}

#[test]
fn budget_exits_three() {
    assert_eq!(vf(&["bfun", "--vars", "x,y", "--f", "x^2 + y^3", "--budget", "3"]).status.code(), Some(3));
}

#[test]
fn verify_refutes_and_confirms() {
    let base = ["verify", "--vars", "x,y,z", "--f", "x^2 + y^2 + z^2", "--k", "1", "--alpha", "1", "--deg-bound", "4"];
    let mut good = base.to_vec();
    good.extend(["--gens", "x; y; z"]);
    let (code, v) = json(&good);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["verdict"], "verified-in-window");
    let mut bad = base.to_vec();
    bad.extend(["--gens", "x^2; y; z"]);
    let (code, v) = json(&bad);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["verdict"], "refuted");
}

#[test]
fn hmi_with_literature_generators() {
    let path = std::env::temp_dir().join(format!("vf-cli-test-{}.txt", std::process::id()));
    std::fs::write(&path, "x^3\nx^2*y^2\nx*y^3\ny^5\nx^2*y\n").unwrap();
    let (code, v) = json(&[
        "hmi", "--vars", "x,y", "--f", "x^2 + y^3", "--k", "2", "--alpha", "9/10", "--deg-bound", "6",
        "--verify", path.to_str().unwrap(),
    ]);
    std::fs::remove_file(&path).ok();
    assert_eq!(code, 0);
    let r = &v["result"];
    assert_eq!(r["generators"], serde_json::json!(["x^2*y", "x^3", "x*y^3", "y^5"]));
    assert_eq!(r["verify"]["redundant_given"], serde_json::json!(["x^2*y^2"]));
    assert_eq!(r["verify"]["matches"], true);
}

#[test]
fn family_limit_literature_family() {
    let (code, v) = json(&["family-limit", "--gens", "x^3; x^2*y^2; x*y^3; y^4 - (2*beta+1)*x^2*y", "--at", "5/6"]);
    assert_eq!(code, 0);
    let f = &v["result"]["fibers"];
    assert_eq!(f["infinity"]["value"], serde_json::json!(["x^2*y", "x^3", "x*y^3", "y^5"]));
    assert_eq!(f["infinity"]["colength"], 9);
    assert_eq!(f["5/6"]["colength"], 9);
    let u = v["result"]["charts"]["u"].as_array().unwrap();
    assert!(u.iter().any(|g| g == "y^4*u - x^2*y*u - 2*x^2*y"), "{u:?}");
}

#[test]
fn out_file() {
    let path = std::env::temp_dir().join(format!("vf-cli-out-{}.json", std::process::id()));
    let out = vf(&["annfs", "--vars", "x", "--f", "x", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(v["result"]["kill_check"], true);
}

#[test]
fn selftest_passes() {
    let (code, v) = json(&["selftest"]);
    assert_eq!(code, 0, "{v}");
}
