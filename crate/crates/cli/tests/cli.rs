use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn logchern(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_logchern")).args(args).env("LOGCHERN_THREADS", "2").output().unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let out = logchern(&a);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    });
    (v, out.status.code().unwrap())
}

fn text(args: &[&str]) -> (String, i32) {
    let out = logchern(args);
    (String::from_utf8(out.stdout).unwrap(), out.status.code().unwrap())
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("logchern-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn verify_worked_example() {
    let (v, code) = json(&["verify", "--example", "eight_planes"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], "logchern-report/1");
    let r = &v["result"];
    assert_eq!(r["N"], 3);
    assert_eq!(r["lhs"], serde_json::json!([1, -4, 7, -2]));
    assert_eq!(r["csm"], serde_json::json!([1, -4, 7, -5]));
    assert_eq!(r["defect_coeff"], 1);
    assert_eq!(r["predicted_defect"], serde_json::json!([0, 0, 0, 3]));
    assert_eq!(r["residual"], serde_json::json!([0, 0, 0, 0]));
    assert_eq!(r["hypotheses"]["certified"], true);

    let (t, code) = text(&["verify", "--example", "eight_planes"]);
    assert_eq!(code, 0);
    assert!(t.contains("c(dual of log forms)  = 1 - 4h + 7h^2 - 2h^3"));
    assert!(t.contains("c_SM(complement)      = 1 - 4h + 7h^2 - 5h^3"));
    assert!(t.contains("residual              = 0"));
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    for args in [
        &["verify", "--example", "eight_planes"][..],
        &["nval", "--example", "eight_planes", "--seed", "3"][..],
        &["resolution", "--example", "generic4_c3"][..],
        &["lattice", "--example", "three_lines"][..],
    ] {
        let mut a = args.to_vec();
        a.extend(["--format", "json"]);
        let first = logchern(&a).stdout;
        let second = logchern(&a).stdout;
        assert_eq!(first, second, "{args:?}");
        assert!(!String::from_utf8(first).unwrap().contains("elapsed"));
    }
}

#[test]
fn poincare_of_boolean_arrangement() {
    let (t, code) = text(&["poincare", "--example", "boolean3"]);
    assert_eq!(code, 0);
    assert!(t.contains("(1+t)^3"));
    assert!(t.contains("projective: 1 + 2t + t^2 = (1+t)^2"));
    let (v, _) = json(&["poincare", "--example", "boolean3"]);
    assert_eq!(v["result"]["projective_factored"], "(1+t)^2");
    assert_eq!(v["result"]["affine_factored"], "(1+t)^3");
}

#[test]
fn nval_of_generic_planes() {
    let (t, code) = text(&["nval", "--example", "generic4_c3"]);
    assert_eq!(code, 0);
    assert!(t.contains("N = 0  (locally free, not free)"), "{t}");
    let (v, _) = json(&["nval", "--example", "eight_planes", "--seed", "11", "--chart", "2"]);
    assert_eq!(v["result"]["N"], 3);
    assert_eq!(v["result"]["self_test"]["agrees"], true);
    let total: i64 = v["result"]["per_point"].as_array().unwrap().iter().map(|p| p["n"].as_i64().unwrap()).sum();
    assert_eq!(total, 3);
}

#[test]
fn free_examples_verify_with_zero_defect() {
    for name in ["boolean2", "boolean3", "boolean4", "boolean5", "rank2_triple", "three_lines"] {
        let (v, code) = json(&["verify", "--example", name]);
        assert_eq!(code, 0, "{name}");
        assert_eq!(v["result"]["N"], 0, "{name}");
        assert!(v["result"]["residual"].as_array().unwrap().iter().all(|c| c == 0), "{name}");
    }
}

#[test]
fn csm_and_chern_commands() {
    let (v, code) = json(&["csm", "--example", "eight_planes"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["divisor"], serde_json::json!([0, 8, -1, 9]));
    let (v, _) = json(&["chern", "--example", "eight_planes"]);
    assert_eq!(v["result"]["forms_twisted"], serde_json::json!([1, 7, 18, 20]));
    let (v, _) = json(&["modules", "--example", "boolean3"]);
    assert_eq!(v["result"]["D"]["freeness"]["exponents"], serde_json::json!([1, 1, 1]));
}

#[test]
fn files_are_read() {
    let p = temp_file("braid.json", r#"{"l": 3, "hyperplanes": [[1,-1,0],[1,0,-1],[0,1,-1]]}"#);
    let (v, code) = json(&["poincare", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["affine"], serde_json::json!([1, 3, 2]));
}

#[test]
fn input_errors_exit_with_one() {
    let dup = temp_file("dup.json", r#"{"l": 2, "hyperplanes": [[1,0],[2,0]]}"#);
    assert_eq!(logchern(&["verify", dup.to_str().unwrap()]).status.code(), Some(1));
    let bad = temp_file("bad.json", r#"{"l": 2, "planes": []}"#);
    assert_eq!(logchern(&["lattice", bad.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(logchern(&["lattice", "/nonexistent/arrangement.json"]).status.code(), Some(1));
    assert_eq!(logchern(&["verify", "--example", "no_such_example"]).status.code(), Some(1));
    // flags that do not apply to the command
    assert_eq!(logchern(&["lattice", "--example", "boolean2", "--chart", "1"]).status.code(), Some(1));
    assert_eq!(logchern(&["csm", "--example", "boolean2", "--assume-locally-tame"]).status.code(), Some(1));
    assert_eq!(logchern(&["verify", "--example", "boolean2", "--degree-cap", "0"]).status.code(), Some(1));
    let affine = temp_file("affine.json", r#"{"l": 1, "hyperplanes": [[1],[1]], "constants": [0, 1]}"#);
    assert_eq!(logchern(&["verify", affine.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(logchern(&["poincare", affine.to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn non_isolated_locus_exits_with_two() {
    // the worked example times one more coordinate: non-free along a curve
    let p = temp_file(
        "lifted.json",
        r#"{"l": 5, "hyperplanes": [[1,0,0,0,0],[0,1,0,0,0],[0,0,1,0,0],[0,0,0,1,0],[1,0,0,-1,0],
            [0,1,0,-1,0],[1,1,1,0,0],[1,-1,1,0,0],[0,0,0,0,1]]}"#,
    );
    let (v, code) = json(&["verify", p.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(v["result"]["applicable"], false);
    assert_eq!(v["result"]["lhs"][0], 1);
    assert_eq!(logchern(&["nval", p.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn examples_are_listed() {
    let (v, code) = json(&["examples"]);
    assert_eq!(code, 0);
    let names: Vec<&str> = v["examples"].as_array().unwrap().iter().map(|e| e["name"].as_str().unwrap()).collect();
    for n in ["eight_planes", "boolean2", "boolean5", "three_lines", "rank2_triple", "generic4_c3", "generic5_c4"] {
        assert!(names.contains(&n), "{n}");
    }
}

#[test]
fn help_exits_cleanly() {
    assert_eq!(logchern(&["--help"]).status.code(), Some(0));
    assert_eq!(logchern(&[]).status.code(), Some(1));
}
