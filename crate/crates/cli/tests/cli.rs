use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn rzk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rzk"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn problem(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn analyze_json(text: &str, flags: &[&str]) -> Value {
    let f = problem(text);
    let mut args = vec!["analyze", f.path().to_str().unwrap()];
    args.extend_from_slice(flags);
    let out = rzk(&args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

const TRIANGLE: &str = r#"{"m":3, "facets":[[1,2],[2,3],[1,3]], "group_generators":["111"]}"#;
const SQUARE: &str =
    r#"{"m":4, "facets":[[1,2],[2,3],[3,4],[1,4]], "group_generators":["1111","1100"]}"#;

#[test]
fn triangle_is_exact_two() {
    let r = analyze_json(TRIANGLE, &[]);
    let a = &r["analysis"];
    for key in ["coindex", "weight"] {
        assert_eq!(a[key]["lower"], 2);
        assert_eq!(a[key]["upper"], 2);
        assert_eq!(a[key]["exact"], true);
        assert_eq!(a[key]["exactness"][0], "Theorem 1.1");
    }
    assert_eq!(a["index"]["status"], "bounded");
    assert_eq!(a["index"]["lower"], 2);
    assert_eq!(a["free"], true);
}

#[test]
fn square_rank_two_is_not_free() {
    let r = analyze_json(SQUARE, &["--oracle"]);
    let a = &r["analysis"];
    assert_eq!(a["rank"], 2);
    assert_eq!(a["free"], false);
    assert_eq!(a["index"]["status"], "not_applicable");
    assert_eq!(a["index"]["witness"], "1100");
    assert_eq!(a["coindex"]["lower"], 1);
    assert_eq!(a["coindex"]["upper"], 1);
    assert_eq!(r["oracle"]["betti"], serde_json::json!([1, 2, 1]));
    assert_eq!(r["oracle"]["euler_characteristic"], 0);
}

#[test]
fn collapse_flag_lowers_index_bound() {
    // cone over the 4-cycle, free rank-2 action
    let text = r#"{"m":5, "facets":[[1,2,5],[2,3,5],[3,4,5],[1,4,5]],
                   "group_generators":["10101","01011"]}"#;
    let plain = analyze_json(text, &[]);
    assert_eq!(plain["analysis"]["free"], true);
    assert_eq!(plain["analysis"]["index"]["upper"], 3);
    let r = analyze_json(text, &["--collapse", "--seed=7"]);
    assert_eq!(r["analysis"]["index"]["upper"], 2);
    assert_eq!(r["analysis"]["index_dimension_bound"]["source"], "Proposition 1.3");
    let budgeted = analyze_json(text, &["--collapse=1"]);
    assert_eq!(budgeted["analysis"]["index"]["upper"], 3);
}

#[test]
fn output_is_deterministic() {
    let a = rzk(&["analyze", problem(SQUARE).path().to_str().unwrap(), "--oracle"]);
    let b = rzk(&["analyze", problem(SQUARE).path().to_str().unwrap(), "--oracle"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn text_format() {
    let f = problem(TRIANGLE);
    let out = rzk(&["analyze", f.path().to_str().unwrap(), "--format=text"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("Theorem 1.1"), "{text}");
}

#[test]
fn input_errors_exit_two() {
    let bad = problem(r#"{"m":3, "facets":[[1,2],[2,3],[1,3]], "group_generators":["11"]}"#);
    let out = rzk(&["analyze", bad.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("group_generators[0]"));

    let out = rzk(&["analyze", "/nonexistent/problem.json"]);
    assert_eq!(out.status.code(), Some(2));
    let out = rzk(&["analyze", bad.path().to_str().unwrap(), "--format=xml"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn resource_caps_exit_three() {
    let f = problem(SQUARE);
    let out = rzk(&["analyze", f.path().to_str().unwrap(), "--oracle", "--max-cells=10"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());
    let out = rzk(&["exhaustive", "--max-m", "6"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn exhaustive_small() {
    let out = rzk(&["exhaustive", "--max-m", "3", "--format=json"]);
    assert!(out.status.success());
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["complexes"], 12);
    let results = r["results"].as_array().unwrap();
    assert!(results.iter().all(|p| p["counterexample"].is_null()));
}
