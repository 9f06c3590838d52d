use scarf_demo::{bounds_curve, profit_explorer, staircase};
use serde_json::{json, Value};

fn call(f: fn(&str) -> Result<String, String>, input: Value) -> Value {
    serde_json::from_str(&f(&input.to_string()).unwrap()).unwrap()
}

#[test]
fn profit_explorer_matches_the_cli_sample() {
    let out = call(
        profit_explorer,
        json!({
            "levels": [4, 4, 4, 4],
            "linear": [1, 1, 4, 5],
            "interactions": [[3, 4, 2]],
            "cutoff": 28,
            "v": 12
        }),
    );
    assert_eq!(out["minimal_points"].as_array().unwrap().len(), 11);
    assert_eq!(out["generic"], false);
    assert_eq!(out["kind"], "scarf_deformed");
    assert_eq!(out["term_count"], 49);
    assert_eq!(out["complete_term_count"], 2047);
    let r = out["reliability"].as_f64().unwrap();
    assert!((r - out["oracle"].as_f64().unwrap()).abs() < 1e-12);
    assert!((r - 0.2890625).abs() < 1e-12);
}

#[test]
fn profit_explorer_reports_input_errors() {
    let e = profit_explorer(&json!({"levels": [2], "linear": [1, 2], "cutoff": 1}).to_string())
        .unwrap_err();
    assert!(e.contains("2 linear coefficients"));
    let e = profit_explorer(&json!({"levels": [3], "linear": [1], "cutoff": 9}).to_string())
        .unwrap_err();
    assert!(e.contains("empty"), "{e}");
    assert!(profit_explorer("not json").unwrap_err().starts_with("bad input"));
}

#[test]
fn bounds_curve_brackets_and_ends_exact() {
    let out = call(
        bounds_curve,
        json!({
            "levels": [4, 4, 4, 4],
            "points": [[3,2,3,1],[2,3,3,1],[2,0,2,2],[1,1,2,2],[0,2,2,2],
                       [3,0,1,3],[2,1,1,3],[1,2,1,3],[0,3,1,3]],
            "v": 10
        }),
    );
    let exact = out["exact"].as_f64().unwrap();
    assert!((exact - out["oracle"].as_f64().unwrap()).abs() < 1e-12);
    assert_eq!(out["scarf_terms"], 31);
    let rows = out["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 9);
    for row in rows {
        let scarf = row["scarf"].as_f64().unwrap();
        let bonf = row["bonferroni"].as_f64().unwrap();
        if row["kind"] == "upper" {
            assert!(scarf >= exact - 1e-12 && scarf <= bonf + 1e-12);
        } else {
            assert!(scarf <= exact + 1e-12 && scarf >= bonf - 1e-12);
        }
    }
    assert!((rows[8]["bonferroni"].as_f64().unwrap() - exact).abs() < 1e-12);
}

#[test]
fn staircase_grid_is_the_indicator_complement() {
    let out = call(staircase, json!({"points": [[3, 0], [2, 2], [0, 3]]}));
    assert_eq!(out["kind"], "scarf");
    assert_eq!(out["faces"].as_array().unwrap().len(), 5);
    assert_eq!(out["numerator"], "1 - x^3 - x^2*y^2 - y^3 + x^3*y^2 + x^2*y^3");
    assert_eq!((out["width"].as_u64(), out["height"].as_u64()), (Some(5), Some(5)));
    let grid = out["coefficients"].as_array().unwrap();
    for (y, row) in grid.iter().enumerate() {
        for (x, c) in row.as_array().unwrap().iter().enumerate() {
            let inside = (x >= 3) || (x >= 2 && y >= 2) || (y >= 3);
            assert_eq!(c.as_i64().unwrap(), if inside { 0 } else { 1 }, "({x},{y})");
        }
    }
}

#[test]
fn staircase_drops_redundant_points() {
    let out = call(staircase, json!({"points": [[2, 0], [2, 1], [0, 2], [1, 1]]}));
    assert_eq!(out["minimal_points"], json!([[2, 0], [0, 2], [1, 1]]));
    assert_eq!(out["faces"].as_array().unwrap().len(), 5);
    assert_eq!(out["coefficients"][1][1], 0);
    assert_eq!(out["coefficients"][0][1], 1);
}
