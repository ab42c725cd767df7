//! Browser bindings for the demo page in `www/`. Each operation is a plain
//! function returning a JSON string, with a thin `wasm_bindgen` wrapper.

use serde_json::{json, Value as Json};
use starconv::gallery::{self, fixture};
use starconv::{convolve, is_convex, is_monoid, Carrier, ConvMode, Functor, Value, DEFAULT_TOLERANCE};
use wasm_bindgen::prelude::*;

/// Fixtures offered in the page's drop-down.
pub const DEMO_FIXTURES: &[&str] = &[
    "powerset:2",
    "powerset:3",
    "oml:boolean:2",
    "oml:mo2",
    "oml:o6",
    "heyting:chain:3",
    "group:z2",
    "groupoid:pair:2",
    "effect:chain:3",
    "double:effect:chain:2",
    "fusion:ising",
    "fusion:fib",
    "geometry:fano",
];

/// Largest ground set the convolution panel accepts.
pub const MAX_DEMO_POWERSET: usize = 4;

/// All five law reports for a fixture, with its objects and carrier.
pub fn check_fixture(name: &str) -> Result<String, String> {
    let s = fixture(name).map_err(|e| e.to_string())?;
    let laws = s.check_all(DEFAULT_TOLERANCE).map_err(|e| e.to_string())?;
    Ok(json!({
        "fixture": name,
        "carrier": s.carrier().name(),
        "objects": s.poset().labels(),
        "laws": laws.iter().map(|o| o.to_json()).collect::<Vec<_>>(),
    })
    .to_string())
}

fn parse_values(s: &starconv::PromonoidalStructure, text: &str, what: &str) -> Result<Functor, String> {
    let raw: Vec<Json> = serde_json::from_str(text).map_err(|e| format!("{what}: {e}"))?;
    if raw.len() != s.len() {
        return Err(format!("{what}: expected {} values, got {}", s.len(), raw.len()));
    }
    let values = raw
        .iter()
        .enumerate()
        .map(|(i, v)| Value::from_json(v, s.carrier()).map_err(|e| format!("{what}[{}]: {e}", s.label(i))))
        .collect::<Result<Vec<_>, _>>()?;
    Functor::new(s, values).map_err(|e| e.to_string())
}

/// Convolves two `maxplus` set functions on the subsets of `{1..n}`. `f`
/// and `g` are JSON arrays indexed by bitmask; numbers, `"inf"` and
/// `"-inf"` are accepted. Also reports both monoid verdicts for `f`.
pub fn convolve_powerset(n: usize, f: &str, g: &str, mode: &str) -> Result<String, String> {
    if n > MAX_DEMO_POWERSET {
        return Err(format!("ground set is limited to {MAX_DEMO_POWERSET} elements"));
    }
    let mode = match mode {
        "upper" => ConvMode::Upper,
        "lower" => ConvMode::Lower,
        other => return Err(format!("unknown mode `{other}`")),
    };
    let s = gallery::powerset_structure(n, Carrier::MaxPlus).map_err(|e| e.to_string())?;
    let (f, g) = (parse_values(&s, f, "f")?, parse_values(&s, g, "g")?);
    let h = convolve(&f, &g, &s, mode).map_err(|e| e.to_string())?;
    let verdict = |m| {
        is_monoid(&f, &s, m, DEFAULT_TOLERANCE)
            .map(|v| v.to_json())
            .map_err(|e| e.to_string())
    };
    Ok(json!({
        "objects": s.poset().labels(),
        "result": h.values().iter().map(Value::to_json).collect::<Vec<_>>(),
        "upper_monoid": verdict(ConvMode::Upper)?,
        "lower_monoid": verdict(ConvMode::Lower)?,
    })
    .to_string())
}

/// The indicator of a set of Fano points (bit `i` is point `i + 1`), its
/// convolution square, and whether the set is convex.
pub fn fano_convexity(points: u32) -> Result<String, String> {
    let s = fixture("geometry:fano").map_err(|e| e.to_string())?;
    if points >> s.len() != 0 {
        return Err(format!("point mask {points:#b} has bits beyond the {} points", s.len()));
    }
    let chosen: Vec<usize> = (0..s.len()).filter(|i| points >> i & 1 == 1).collect();
    let f = Functor::indicator(&s, &chosen).map_err(|e| e.to_string())?;
    let square = convolve(&f, &f, &s, ConvMode::Upper).map_err(|e| e.to_string())?;
    let convex = is_convex(&f, &s, DEFAULT_TOLERANCE).map_err(|e| e.to_string())?;
    Ok(json!({
        "points": s.poset().labels(),
        "selected": chosen.iter().map(|&i| s.label(i)).collect::<Vec<_>>(),
        "square": square.values().iter().map(Value::to_json).collect::<Vec<_>>(),
        "convex": convex.to_json(),
    })
    .to_string())
}

#[wasm_bindgen(js_name = fixtureNames)]
pub fn fixture_names_js() -> String {
    json!(DEMO_FIXTURES).to_string()
}

#[wasm_bindgen(js_name = checkFixture)]
pub fn check_fixture_js(name: &str) -> Result<String, JsValue> {
    check_fixture(name).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = convolvePowerset)]
pub fn convolve_powerset_js(n: usize, f: &str, g: &str, mode: &str) -> Result<String, JsValue> {
    convolve_powerset(n, f, g, mode).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = fanoConvexity)]
pub fn fano_convexity_js(points: u32) -> Result<String, JsValue> {
    fano_convexity(points).map_err(|e| JsValue::from_str(&e))
}
