use std::process::{Command, Output};

use serde_json::Value;

fn bk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bk"))
        .args(args)
        .env_remove("BK_SEED")
        .output()
        .expect("bk runs")
}

fn json_of(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

const HALF_IN_M2: &str = r#"[[["1"]],[["1","0"],["0","0"]]]"#;
const M2_MODULE: &str = r#"{"ambient":1,"relations":[[[[["1","0"],["0","0"]]]]]}"#;

#[test]
fn dim_of_a_projection() {
    let v = json_of(&bk(&[
        "dim",
        "--algebra",
        "gauss_plus_m2",
        "--element",
        HALF_IN_M2,
    ]));
    assert_eq!(v["dim"], serde_json::json!(["1", "1/2"]));
}

#[test]
fn dim_with_weights_is_a_weighted_sum() {
    let v = json_of(&bk(&[
        "dim",
        "--algebra",
        "gauss_plus_m2",
        "--element",
        HALF_IN_M2,
        "--weights",
        "1/3,2/3",
    ]));
    // 1/3 * 1 + 2/3 * 1/2
    assert_eq!(v["real"], serde_json::json!("2/3"));
}

#[test]
fn malformed_json_reports_position() {
    let out = bk(&[
        "dim",
        "--algebra",
        "gauss_plus_m2",
        "--element",
        r#"[[["1"]],[["1","0"],["0"]]"#,
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("position"), "{}", stderr(&out));
}

#[test]
fn element_for_the_wrong_algebra_is_rejected() {
    let out = bk(&["dim", "--algebra", "gauss", "--element", HALF_IN_M2]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("mismatch"), "{}", stderr(&out));
}

#[test]
fn equivalence_and_witness() {
    let p = r#"[[["1","0"],["0","0"]]]"#;
    let q = r#"[[["0","0"],["0","1"]]]"#;
    let v = json_of(&bk(&["equiv", "--algebra", "m2", "--p", p, "--q", q]));
    assert_eq!(v["equivalent"], Value::Bool(true));
    let w = json_of(&bk(&["witness", "--algebra", "m2", "--p", p, "--q", q]));
    // w = e21: w*w = e11 and ww* = e22
    assert_eq!(w["w"], serde_json::json!([[["0", "0"], ["1", "0"]]]));
}

#[test]
fn close_methods_agree() {
    let v = json_of(&bk(&["close", "--algebra", "m2", "--module", M2_MODULE]));
    assert_eq!(v["agree"], Value::Bool(true));
    assert_eq!(v["bnd"], v["goldie"]);
    assert_eq!(v["summands"], v["projinf"]);
}

#[test]
fn close_output_depends_only_on_the_seed() {
    let run = |seed: &str| {
        Command::new(env!("CARGO_BIN_EXE_bk"))
            .args([
                "close",
                "--algebra",
                "m2",
                "--module",
                M2_MODULE,
                "--method",
                "summands",
            ])
            .env("BK_SEED", seed)
            .output()
            .expect("bk runs")
            .stdout
    };
    assert_eq!(run("5"), run("5"));
}

#[test]
fn split_of_a_projective_module() {
    let v = json_of(&bk(&["split", "--algebra", "m2", "--module", M2_MODULE]));
    assert_eq!(v["bounded_is_zero"], Value::Bool(true));
    assert_eq!(v["dims"]["projective"], serde_json::json!(["1/2"]));
}

#[test]
fn k0_monoid_count() {
    let v = json_of(&bk(&[
        "k0",
        "monoid",
        "--algebra",
        "gauss_plus_m2",
        "--nmax",
        "1",
    ]));
    assert_eq!(v["classes"].as_array().map(Vec::len), Some(6));
}

#[test]
fn lab_report_on_the_simple_dual_numbers_module() {
    let v = json_of(&bk(&[
        "lab",
        "report",
        "--builtin",
        "dual_numbers",
        "--module",
        "quotient_by_radical",
    ]));
    let part = |name: &str| {
        v["parts"]
            .as_array()
            .unwrap()
            .iter()
            .find(|p| p["name"] == name)
            .cloned()
            .unwrap()
    };
    assert_eq!(part("goldie")["is_full"], Value::Bool(true));
    assert_eq!(part("bounded")["is_zero"], Value::Bool(true));
}

#[test]
fn verify_dimension_names_the_axioms() {
    let v = json_of(&bk(&["verify", "dimension", "--seed", "7", "--cases", "5"]));
    let report = &v[0];
    assert_eq!(report["passed"], Value::Bool(true));
    let names: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter_map(|c| c["name"].as_str())
        .collect();
    for axiom in ["D1", "D2", "D3", "D4", "D5", "D6", "D7", "D8", "D9", "D10", "D11"] {
        assert!(names.contains(&axiom), "{axiom} missing from {names:?}");
    }
}

#[test]
fn verify_is_deterministic_and_sequential_matches_parallel() {
    let a = bk(&["verify", "witness", "--seed", "3", "--cases", "4"]);
    let b = bk(&["verify", "witness", "--seed", "3", "--cases", "4", "--sequential"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn empty_sweep_warns() {
    let v = json_of(&bk(&["verify", "closure", "--cases", "0"]));
    assert!(!v[0]["warnings"].as_array().unwrap().is_empty());
}

#[test]
fn k0_sweep_records_the_monoid_count() {
    let v = json_of(&bk(&["verify", "k0", "--cases", "2"]));
    assert_eq!(
        v[0]["facts"]["monoid_count_gauss_plus_m2_nmax_1"],
        serde_json::json!(6)
    );
}

#[test]
fn unknown_suite_is_an_input_error() {
    let out = bk(&["verify", "nope"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("unknown"));
}

#[test]
fn replay_of_a_passing_case_reproduces_nothing() {
    let failure = r#"{"suite":"dimension","check":"D1","seed":7,"case":3,"message":"","instance":{}}"#;
    let v = json_of(&bk(&["replay", failure]));
    assert_eq!(v["reproduced"], Value::Bool(false));
    let out = bk(&["replay", r#"{"suite":"dimension"}"#]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn text_format() {
    let out = bk(&[
        "--format",
        "text",
        "dim",
        "--algebra",
        "gauss_plus_m2",
        "--element",
        HALF_IN_M2,
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("dim"));
    assert!(text.contains("1/2"));
    assert!(serde_json::from_str::<Value>(&text).is_err());
}
