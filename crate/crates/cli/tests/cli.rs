use std::process::{Command, Output};

use serde_json::Value;

fn polylink(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polylink"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let out = polylink(&all);
    let stdout = String::from_utf8(out.stdout).unwrap();
    let value = serde_json::from_str(&stdout).unwrap_or_else(|e| panic!("{e}: {stdout}"));
    (value, out.status.code().unwrap())
}

#[test]
fn linkedness_of_pnm_3_2_with_witness() {
    let (v, code) = json(&["linkedness", "Pnm(3,2)", "--witness"]);
    assert_eq!(code, 0);
    assert_eq!(v["linkedness"], 3);
    assert_eq!(v["dim"], 8);
    assert_eq!(v["f0"], 11);
    assert_eq!(v["gamma"], 2);
    assert_eq!(v["witness_pairing"].as_array().unwrap().len(), 4);
}

#[test]
fn linkedness_cap() {
    let (v, code) = json(&["linkedness", "simplex(5)", "--max-k", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["linkedness"], 1);
    assert_eq!(v["capped"], true);
}

#[test]
fn bounds_at_d_10() {
    let (v, code) = json(&["bounds", "--d", "10"]);
    assert_eq!(code, 0);
    assert_eq!(
        (v["lower"].as_u64(), v["upper"].as_u64(), v["exact"].as_u64()),
        (Some(4), Some(4), Some(4))
    );
}

#[test]
fn bounds_with_gamma() {
    let (v, _) = json(&["bounds", "--d", "8", "--gamma", "2"]);
    assert_eq!(v["k_few_lower"], 3);
    assert_eq!(v["k_upper_general"], 4);
    assert_eq!(v["k_d_gamma_exact"], 3);
    let out = polylink(&["bounds", "--d", "2", "--gamma", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn classify_join_of_interval_and_octahedron() {
    let (v, code) = json(&["classify", "join(interval,cross(3))"]);
    assert_eq!(code, 0);
    assert_eq!(v["linkedness"], 2);
    assert_eq!(v["classification"]["case"], "iii");
    assert_eq!(v["canonical_form"], Value::Null);
}

#[test]
fn classify_pnm_is_case_one() {
    let (v, code) = json(&["classify", "Pnm(3,2)"]);
    assert_eq!(code, 0);
    assert_eq!(v["classification"]["case"], "i");
    assert_eq!(v["canonical_form"], "P(3; 1,1, 1,1)");
}

#[test]
fn classify_reports_uncovered_extremal_polytope() {
    let (v, code) = json(&["classify", "bipyr(simplex(3))"]);
    assert_eq!(code, 1);
    assert_eq!(v["classification"]["case"], "none");
}

#[test]
fn kd_table_rows() {
    let (v, code) = json(&["kd-table"]);
    assert_eq!(code, 0);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 15);
    assert_eq!(rows[6]["exact"], 3);
    assert!(rows[14]["discrepancy"].is_string());
    assert_eq!(rows[14]["upper"], 6);
}

#[test]
fn link_cross_checks_methods() {
    let (v, code) = json(&["link", "Pnm(3,2)", "--pairs", "0:3,1:4,2:5"]);
    assert_eq!(code, 0);
    assert_eq!(v["linked"], true);
    assert_eq!(v["consistent"], true);
    assert_eq!(v["subdivision"]["status"], "linked");
    assert_eq!(v["simplex_face"]["status"], "linked");
}

#[test]
fn link_square_diagonals_fails() {
    let (v, code) = json(&["link", "square", "--pairs", "0:1,2:3"]);
    assert_eq!(code, 1);
    assert_eq!(v["linked"], false);
    assert_eq!(v["consistent"], true);
}

#[test]
fn build_then_analyze_file() {
    let out = polylink(&["build", "pyr(square,1)"]);
    assert_eq!(out.status.code(), Some(0));
    let path = std::env::temp_dir().join(format!("polylink-cli-test-{}.json", std::process::id()));
    std::fs::write(&path, &out.stdout).unwrap();
    let (v, code) = json(&["analyze", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(code, 0);
    assert_eq!(v["dim"], 3);
    assert_eq!(v["f0"], 5);
    assert_eq!(v["connectivity"], 3);
    assert_eq!(v["canonical_form"], "P(1; 1,1)");
    assert_eq!(v["complement"]["isolated"].as_array().unwrap().len(), 1);
}

#[test]
fn invalid_input_exits_with_two() {
    assert_eq!(polylink(&["linkedness", "frob(2)"]).status.code(), Some(2));
    assert_eq!(polylink(&["linkedness", "sum(point,square)"]).status.code(), Some(2));
    assert_eq!(polylink(&["link", "square", "--pairs", "0:0"]).status.code(), Some(2));
    assert_eq!(polylink(&["link", "square", "--pairs", "0-1"]).status.code(), Some(2));
    assert_eq!(polylink(&["verify", "nope"]).status.code(), Some(2));
    let path = std::env::temp_dir().join(format!("polylink-cli-bad-{}.json", std::process::id()));
    std::fs::write(&path, r#"{"dim": 2, "n_vertices": 4, "facets": [[0,1],[1,2],[2,3]]}"#).unwrap();
    let code = polylink(&["analyze", path.to_str().unwrap()]).status.code();
    std::fs::remove_file(&path).ok();
    assert_eq!(code, Some(2));
}

#[test]
fn time_limit_exits_with_three() {
    let out = polylink(&["--time-limit", "0.2", "linkedness", "Pnm(5,3)"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_single_suite() {
    let out = polylink(&["verify", "kd-table"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("[PASS]  9. kd-table"), "{text}");
}

#[test]
fn seed_is_accepted() {
    let out = polylink(&["--seed", "7", "bounds", "--d", "7"]);
    assert_eq!(out.status.code(), Some(0));
}
