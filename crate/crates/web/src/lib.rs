//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Every entry point takes plain strings and returns a JSON string, so the
//! page needs no bundler.

use horolat::freegroup::{phi_boundary, separate, BoundaryWord, ReducedWord};
use horolat::horoboundary::boundary_census;
use horolat::lattice::{GeneratingSet, LatticePoint, LengthOracle};
use serde_json::json;
use wasm_bindgen::prelude::*;

fn parse_generators(text: &str) -> Result<GeneratingSet, String> {
    let half: Vec<Vec<i64>> = serde_json::from_str(text).map_err(|e| format!("generators: {e}"))?;
    let dim = half.first().map(|g| g.len()).ok_or("generators: empty list")?;
    let pts: Vec<LatticePoint> = half.into_iter().map(LatticePoint::new).collect();
    GeneratingSet::symmetric(dim, &pts).map_err(|e| e.to_string())
}

/// Word lengths on the ball of the given radius, e.g. `"[[1,0],[0,1],[1,1]]"`.
pub fn word_ball(generators: &str, radius: u32) -> Result<String, String> {
    let s = parse_generators(generators)?;
    if s.dim() > 2 {
        return Err("the demo draws dimensions one and two only".into());
    }
    let l = LengthOracle::word(&s);
    let points: Vec<_> = l.ball(radius.min(12) as f64).into_iter().map(|x| json!({"point": x, "length": l.length(&x)})).collect();
    Ok(json!({"dim": s.dim(), "points": points}).to_string())
}

/// Distinct horofunction windows on `[-w, w]` for a generating set of Z.
pub fn census(generators: &str, window: i64) -> Result<String, String> {
    let s = parse_generators(generators)?;
    if s.dim() != 1 {
        return Err("census is offered on the integer line only".into());
    }
    let l = LengthOracle::word(&s);
    let w: Vec<LatticePoint> = (-window.clamp(1, 30)..=window.clamp(1, 30)).map(|k| LatticePoint::new(vec![k])).collect();
    let c = boundary_census(&l, 2, &w, None).map_err(|e| e.to_string())?;
    Ok(c.to_json_value().to_string())
}

/// Boundary values `φ_x(w)` for each word `x` and the separation of two
/// boundary words in `head|cycle` form.
pub fn free_group(words: &str, v: &str, w: &str) -> Result<String, String> {
    let xs: Vec<ReducedWord> = words.split_whitespace().map(|x| x.parse().map_err(|e: horolat::Error| e.to_string())).collect::<Result<_, _>>()?;
    let v: BoundaryWord = v.parse().map_err(|e: horolat::Error| e.to_string())?;
    let w: BoundaryWord = w.parse().map_err(|e: horolat::Error| e.to_string())?;
    let rows: Vec<_> = xs
        .iter()
        .map(|x| json!({"x": x.to_string(), "v": phi_boundary(x, &v), "w": phi_boundary(x, &w)}))
        .collect();
    let sep = separate(&v, &w).ok();
    Ok(json!({"v": v.to_string(), "w": w.to_string(), "values": rows, "separation": sep}).to_string())
}

#[wasm_bindgen(js_name = wordBall)]
pub fn word_ball_js(generators: &str, radius: u32) -> Result<String, JsValue> {
    word_ball(generators, radius).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = census)]
pub fn census_js(generators: &str, window: i32) -> Result<String, JsValue> {
    census(generators, window as i64).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = freeGroup)]
pub fn free_group_js(words: &str, v: &str, w: &str) -> Result<String, JsValue> {
    free_group(words, v, w).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_of_the_hexagon() {
        let out: serde_json::Value = serde_json::from_str(&word_ball("[[1,0],[0,1],[1,1]]", 1).unwrap()).unwrap();
        assert_eq!(out["points"].as_array().unwrap().len(), 7);
    }

    #[test]
    fn census_counts() {
        let one: serde_json::Value = serde_json::from_str(&census("[[1]]", 10).unwrap()).unwrap();
        let two: serde_json::Value = serde_json::from_str(&census("[[1],[2]]", 10).unwrap()).unwrap();
        assert_eq!(one["count"], 2);
        assert_eq!(two["count"], 4);
        assert!(census("[[1,0],[0,1]]", 3).is_err());
    }

    #[test]
    fn free_group_values() {
        let out: serde_json::Value = serde_json::from_str(&free_group("a b ab", "|a", "|b").unwrap()).unwrap();
        assert_eq!(out["values"][0]["v"], 1);
        assert_eq!(out["values"][0]["w"], -1);
        assert_eq!(out["values"][2]["v"], 0);
        assert_eq!(out["separation"]["values"], json!([1, -1]));
        assert!(free_group("a", "|a", "|a").unwrap().contains("\"separation\":null"));
    }
}
