//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Every export takes and returns JSON text so the page needs no generated
//! type glue. The `*_doc` functions hold the logic and run natively in tests.

use serde_json::{json, Value};
use teamgame::analysis::{gamma_game, gamma_value, GammaParams};
use teamgame::explorer::max_gain;
use teamgame::io::{parse_spec, spec_to_value};
use teamgame::rational::format_rational;
use teamgame::strategy::mixture_doc;
use teamgame::{fixtures, solve_with, HistoryClassKey, SolveOptions};
use wasm_bindgen::prelude::*;

/// Keeps a single call small enough not to freeze the tab.
const BROWSER_BUDGET: u128 = 200_000;

fn text<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

pub fn example_doc(name: &str) -> Result<Value, String> {
    Ok(spec_to_value(&fixtures::named(name, None).map_err(text)?))
}

/// Root value, root stage matrix, and both teams' opening mixtures.
pub fn solve_doc(spec_json: &str) -> Result<Value, String> {
    let spec = parse_spec(spec_json).map_err(text)?;
    let solved = solve_with(&spec, &SolveOptions { budget: BROWSER_BUDGET }).map_err(text)?;
    let root = HistoryClassKey::ROOT;
    let stage = solved.stage_matrix(&root).map_err(text)?;
    let stage: Vec<Vec<String>> = stage.to_rows().iter().map(|r| r.iter().map(format_rational).collect()).collect();
    let opening = |s: &teamgame::BehavioralStrategy| s.get(&root).map(mixture_doc);
    Ok(json!({
        "root_value": format_rational(&solved.root_value),
        "classes": spec.class_count().to_string(),
        "stage_matrix": stage,
        "opening1": opening(&solved.strategy1),
        "opening2": opening(&solved.strategy2),
    }))
}

/// Game value after adding `0..=max_recruits` dominated players to team one.
pub fn recruit_doc(spec_json: &str, max_recruits: usize) -> Result<Value, String> {
    let spec = parse_spec(spec_json).map_err(text)?;
    let record = max_gain(&spec, max_recruits, BROWSER_BUDGET).map_err(text)?;
    Ok(json!({
        "values": record.values.iter().map(format_rational).collect::<Vec<_>>(),
        "gain": format_rational(&record.gain),
        "recruits_used": record.recruits_used,
    }))
}

pub fn gamma_doc(c: usize, a: usize, b: usize) -> Result<Value, String> {
    let params = GammaParams::new(c, a, b).map_err(text)?;
    let value = gamma_value(params, BROWSER_BUDGET).map_err(text)?;
    // a game with no rounds left has a value but no spec
    let spec = gamma_game(params).ok().map(|s| spec_to_value(&s));
    Ok(json!({ "value": format_rational(&value), "spec": spec }))
}

fn to_js(result: Result<Value, String>) -> Result<String, JsError> {
    result.map(|v| v.to_string()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn example(name: &str) -> Result<String, JsError> {
    to_js(example_doc(name))
}

#[wasm_bindgen]
pub fn solve(spec_json: &str) -> Result<String, JsError> {
    to_js(solve_doc(spec_json))
}

#[wasm_bindgen]
pub fn recruit_curve(spec_json: &str, max_recruits: usize) -> Result<String, JsError> {
    to_js(recruit_doc(spec_json, max_recruits))
}

#[wasm_bindgen]
pub fn gamma(c: usize, a: usize, b: usize) -> Result<String, JsError> {
    to_js(gamma_doc(c, a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn card_example_solves_in_the_browser_budget() {
        let spec = example_doc("card").unwrap().to_string();
        let doc = solve_doc(&spec).unwrap();
        assert_eq!(doc["root_value"], "-1/3");
        assert_eq!(doc["stage_matrix"].as_array().unwrap().len(), 3);
    }

    #[test]
    fn recruit_curve_shows_the_majority_gain() {
        let spec = r#"{"T": 3, "P": [[1,0,0],[0,1,0],[0,0,1]], "U": "UM"}"#;
        let doc = recruit_doc(spec, 2).unwrap();
        assert_eq!(doc["values"], json!(["-2/3", "0", "0"]));
        assert_eq!(doc["gain"], "2/3");
    }

    #[test]
    fn gamma_and_errors() {
        assert_eq!(gamma_doc(3, 2, 0).unwrap()["value"], "1");
        assert!(gamma_doc(3, 2, 1).unwrap()["spec"].is_null());
        assert!(solve_doc("{\"T\": 1}").is_err());
    }
}
