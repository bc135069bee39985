use std::process::{Command, Output};

use serde_json::Value;

fn otk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_otk"))
        .args(args)
        .env("OTK_THREADS", "2")
        .output()
        .expect("otk runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn coeffs(v: &Value) -> Vec<i64> {
    v.as_array().unwrap().iter().map(|c| c.as_i64().unwrap()).collect()
}

#[test]
fn analyze_pure_quartic_is_half() {
    let out = otk(&["analyze", "x^4-2"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(coeffs(&v["field"]["poly"]), [-2, 0, 0, 0, 1]);
    assert_eq!(v["signature"]["s"], 2);
    assert_eq!(v["signature"]["t"], 1);
    assert_eq!(v["betti1"], 2);
    assert_eq!(v["lck_rank"], 1);
    assert_eq!(v["case"], "half");
    assert_eq!(v["certificate"]["kind"], "subfield");
    assert_eq!(coeffs(&v["certificate"]["data"]["subfield_poly"]), [-2, 0, 1]);
}

#[test]
fn analyze_table_quartic_is_maximal() {
    let v = json(&otk(&["analyze", "x^4+6x^2-5x-17"]));
    assert_eq!(v["lck_rank"], 2);
    assert_eq!(v["case"], "maximal");
    let ws: Vec<(i64, Vec<i64>)> = v["witnesses"]
        .as_array()
        .unwrap()
        .iter()
        .map(|w| (w["p"].as_i64().unwrap(), coeffs(&w["pattern"])))
        .collect();
    assert_eq!(ws, vec![(2, vec![4]), (3, vec![1, 3]), (5, vec![1, 1, 2])]);
}

#[test]
fn bracket_input_matches_text_input() {
    let a = otk(&["analyze", "[-2,0,0,0,1]"]);
    let b = otk(&["analyze", "x^4-2"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn gate_failure_reports_signature() {
    let out = otk(&["analyze", "x^2+1"]);
    assert_eq!(code(&out), 3);
    let v = json(&out);
    assert_eq!(v["signature"]["s"], 0);
    assert_eq!(v["signature"]["t"], 1);
    assert!(!out.stderr.is_empty());

    assert_eq!(code(&otk(&["analyze", "x^6-2"])), 3, "two complex places");
    assert_eq!(code(&otk(&["analyze", "x^4-4"])), 3, "reducible");
}

#[test]
fn parse_errors_exit_two() {
    assert_eq!(code(&otk(&["analyze", "x^^2"])), 2);
    assert_eq!(code(&otk(&["analyze", "[1,2"])), 2);
    assert_eq!(code(&otk(&["frobnicate"])), 2);
    assert_eq!(code(&otk(&["construct", "half", "--subfield", "x^2-2", "--q", "one"])), 2);
}

#[test]
fn construct_half_reproduces_pure_quartic() {
    let out = otk(&["construct", "half", "--subfield", "x^2-2", "--q", "0"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(coeffs(&v["field"]["poly"]), [-2, 0, 0, 0, 1]);
    assert_eq!(v["construction"]["family"], "half");
    assert_eq!(v["analysis"]["lck_rank"], 1);
}

#[test]
fn construct_maximal_reproduces_table_quartic() {
    let out = otk(&[
        "construct", "maximal", "--n", "2", "--f1", "x^4+x+1", "--f2", "x^4+x+1", "--f3", "x^4+x^2-2", "--g", "0",
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(coeffs(&v["field"]["poly"]), [-17, -5, 6, 0, 1]);
    assert_eq!(v["analysis"]["case"], "maximal");
}

#[test]
fn construct_totally_real_cubic() {
    let v = json(&otk(&["construct", "totally-real", "--n", "3"]));
    assert_eq!(coeffs(&v["field"]["poly"]), [-1, -2, 1, 1]);
    assert_eq!(v["construction"]["prime"], 7);
    assert!(v["analysis"].is_null());
    assert!(v["analysis_skipped"].is_string());
}

#[test]
fn construct_errors_exit_five() {
    let bad = otk(&[
        "construct", "maximal", "--n", "2", "--f1", "x^4+x^2+1", "--f2", "x^4+x+1", "--f3", "x^4+x^2-2",
    ]);
    assert_eq!(code(&bad), 5);
    assert!(json(&bad)["error"].as_str().unwrap().contains("f1"));
    assert_eq!(code(&otk(&["construct", "half", "--subfield", "x^2+1", "--q", "0"])), 5);
}

#[test]
fn geometry_impossible_tolerance_exits_six() {
    let out = otk(&["verify-geometry", "x^4-2", "--samples", "50", "--tol", "1e-30"]);
    assert_eq!(code(&out), 6);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("failed"), "{err}");
    assert_eq!(json(&out)["passed"], false);
}

#[test]
fn geometry_small_run_passes() {
    let out = otk(&["verify-geometry", "x^4-2", "--samples", "50", "--seed", "3"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["hessian_size"], 3);
}

#[test]
fn units_report_for_pure_quartic() {
    let out = otk(&["units", "x^4-2", "--bound", "2"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["unit_rank"], 2);
    assert_eq!(v["positive_rank_certified"], true);
    assert!(!v["units"].as_array().unwrap().is_empty());
}

#[test]
fn reports_are_byte_identical() {
    for args in [
        &["analyze", "x^4+6x^2-5x-17"][..],
        &["verify-geometry", "x^4-2", "--samples", "40", "--seed", "11"],
        &["units", "x^4-2", "--bound", "1"],
    ] {
        let a = otk(args);
        let b = otk(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn pretty_output_parses_to_same_value() {
    let plain = json(&otk(&["analyze", "x^5-4x+2"]));
    let pretty = otk(&["analyze", "x^5-4x+2", "--pretty"]);
    assert!(String::from_utf8_lossy(&pretty.stdout).contains("\n  "));
    assert_eq!(json(&pretty), plain);
}

fn recheck(report: &[u8], name: &str) -> Output {
    let dir = std::env::temp_dir().join(format!("otk-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, report).unwrap();
    otk(&["analyze", "--recheck", path.to_str().unwrap()])
}

#[test]
fn recheck_accepts_saved_reports() {
    for (poly, name) in [("x^4-2", "half.json"), ("x^4+6x^2-5x-17", "max.json"), ("x^5-4x+2", "odd.json")] {
        let saved = otk(&["analyze", poly]);
        let out = recheck(&saved.stdout, name);
        assert_eq!(code(&out), 0, "{poly}: {}", String::from_utf8_lossy(&out.stdout));
        assert_eq!(json(&out)["valid"], true);
    }
}

#[test]
fn recheck_rejects_tampering() {
    let mut v = json(&otk(&["analyze", "x^4-2"]));
    v["certificate"]["data"]["subfield_poly"] = serde_json::json!([-3, 0, 1]);
    let out = recheck(serde_json::to_string(&v).unwrap().as_bytes(), "tampered-subfield.json");
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["valid"], false);

    let mut v = json(&otk(&["analyze", "x^4+6x^2-5x-17"]));
    v["certificate"]["data"]["witnesses"][1]["pattern"] = serde_json::json!([2, 2]);
    let out = recheck(serde_json::to_string(&v).unwrap().as_bytes(), "tampered-witness.json");
    assert_eq!(json(&out)["valid"], false);

    let mut v = json(&otk(&["analyze", "x^5-4x+2"]));
    v["lck_rank"] = serde_json::json!(1);
    let out = recheck(serde_json::to_string(&v).unwrap().as_bytes(), "tampered-rank.json");
    assert_eq!(json(&out)["valid"], false);
}

#[test]
fn recheck_of_garbage_is_a_parse_error() {
    assert_eq!(code(&recheck(b"{not json", "garbage.json")), 2);
}
