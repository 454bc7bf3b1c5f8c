use std::process::{Command, Output};

use liesquare::corpus::{eval_module, same_module};
use liesquare::{Decomposition, RootSystem};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_liesquare"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let o = run(&all);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn dim_of_the_two_dimensional_osp_module() {
    let o = run(&["dim", "BC2", "mu:2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "2");
}

#[test]
fn unknown_family_exits_with_2() {
    let o = run(&["dim", "X9", "f:1"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.starts_with("error: Parse"), "{err}");
}

#[test]
fn bad_weight_exits_with_2() {
    assert_eq!(run(&["dim", "A2", "f:1"]).status.code(), Some(2));
    assert_eq!(run(&["dim", "BC2", "f:0,1"]).status.code(), Some(2));
}

#[test]
fn missing_kind_is_a_usage_error() {
    assert_eq!(run(&["square", "A4", "f:1,0,0,0"]).status.code(), Some(2));
}

#[test]
fn square_json_round_trips() {
    let v = json(&["square", "A4", "f:0,1,0,0", "--kind", "alt"]);
    let rs = RootSystem::new("A4".parse().unwrap());
    let d = Decomposition::from_json(&rs, &v).unwrap();
    assert!(same_module(&d, &eval_module(&rs, "V[b1+b3]").unwrap()));
    assert_eq!(v["summands"][0]["weight_f"], serde_json::json!([1, 0, 1, 0]));
    assert_eq!(v["kind"], "alt");
}

#[test]
fn e8_adjoint_square() {
    let v = json(&["square", "E8", "f:0,0,0,0,0,0,0,1", "--kind", "sym"]);
    let rs = RootSystem::new("E8".parse().unwrap());
    let d = Decomposition::from_json(&rs, &v).unwrap();
    assert!(same_module(&d, &eval_module(&rs, "V[b1] + V[2b8] + k").unwrap()));
}

#[test]
fn text_and_json_agree() {
    let text = stdout(&run(&["dim", "E7", "f:0,0,0,0,0,0,1"]));
    let v = json(&["dim", "E7", "f:0,0,0,0,0,0,1"]);
    assert_eq!(text.trim(), v["dim"].as_str().unwrap());
    assert_eq!(text.trim(), "56");

    let lines = stdout(&run(&["smallreps", "E6"]));
    let v = json(&["smallreps", "E6"]);
    let small = v["small"].as_array().unwrap();
    assert_eq!(small.len(), 3);
    assert_eq!(lines.lines().count(), 3);
    let dims: Vec<i64> = small.iter().map(|x| x["dim"].as_i64().unwrap()).collect();
    let mut sorted = dims.clone();
    sorted.sort();
    assert_eq!(sorted, vec![27, 27, 78]);
}

#[test]
fn classify_d6_alternating() {
    let v = json(&["classify", "D6", "--kind", "alt"]);
    let hits: Vec<(String, String)> = v["hits"]
        .as_array()
        .unwrap()
        .iter()
        .map(|h| {
            (
                h["weight"].as_str().unwrap().to_string(),
                h["status"].as_str().unwrap().to_string(),
            )
        })
        .collect();
    assert!(
        hits.contains(&("f:0,0,0,0,1,0".into(), "IrreduciblePlusTrivial".into())),
        "{hits:?}"
    );
    assert!(
        hits.contains(&("f:0,0,0,0,0,1".into(), "IrreduciblePlusTrivial".into())),
        "{hits:?}"
    );
    assert!(
        hits.contains(&("f:1,0,0,0,0,0".into(), "Irreducible".into())),
        "{hits:?}"
    );
}

#[test]
fn roots_reports_the_numerical_row() {
    let v = json(&["roots", "B3"]);
    assert_eq!(v["table1"]["dim_g"], 21);
    assert_eq!(v["table1"]["rho_norm_sq"], "35/4");
    assert_eq!(v["table1"]["max_coroot_norm_sq"], "4");
    assert_eq!(v["weyl_group_order"], "48");
    let text = stdout(&run(&["roots", "B3"]));
    assert!(text.contains("dim g 21"));
}

#[test]
fn char_prints_dominant_weights() {
    let v = json(&["char", "A2", "f:1,1"]);
    let dom = v["dominant"].as_array().unwrap();
    assert_eq!(dom.len(), 2);
    assert_eq!(dom[1]["even"], 2);
}

#[test]
fn char_guard_needs_force() {
    let o = run(&["char", "E8", "f:3,3,3,3,3,3,3,3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("BudgetExceeded"));
}

#[test]
fn verify_is_deterministic_and_reports_known_diffs() {
    let a = run(&["verify", "--rank-bound", "4"]);
    let b = run(&["verify", "--rank-bound", "4"]);
    assert_eq!(a.stdout, b.stdout);
    // the golden tables carry known misprints, so verify reports a diff
    assert_eq!(a.status.code(), Some(1));
    let text = stdout(&a);
    assert!(text.contains("[PASS] check 3"));
    assert!(text.contains("correction confirmed"));
    assert!(!text.contains("NOT confirmed"));
}

#[test]
fn verify_rejects_missing_corpus() {
    let o = run(&["verify", "--corpus", "/nonexistent/expected.json"]);
    assert_eq!(o.status.code(), Some(2));
}
