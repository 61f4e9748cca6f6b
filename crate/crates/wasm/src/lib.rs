//! Browser bindings: the qubit angle explorer, a slack landscape and a
//! w-coordinate classifier. Every export returns a JSON string.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use syncorr::classical::DEFAULT_FUNCTION_CAP;
use syncorr::io::{bell_report_to_value, correlation_to_value, distribution_to_value, functional_to_value, w_to_value};
use syncorr::polytope::{bell_values, correlation_from_w, w_coordinates, BellFunctional, WCoordinates};
use syncorr::quantum::correlation_me;
use syncorr::search::{qubit_pvms, target_slack, BlochAngles, SumDiffAngles};
use syncorr::{classical_membership, ClassicalCertificate, Rational, Scalar, DEFAULT_TOL};

pub const MIN_LANDSCAPE_STEPS: usize = 8;
pub const MAX_LANDSCAPE_STEPS: usize = 256;

/// Correlation, w-coordinates and Bell values of the qubit strategy at (α, β, γ, δ).
pub fn explore(alpha: f64, beta: f64, gamma: f64, delta: f64) -> Result<Value, String> {
    let angles = BlochAngles::new(alpha, beta, gamma, delta);
    let p = correlation_me(&qubit_pvms(&angles), DEFAULT_TOL).map_err(|e| e.to_string())?;
    let w = w_coordinates(&p).map_err(|e| e.to_string())?;
    let sd = angles.to_sum_diff().canonical();
    Ok(json!({
        "angles": angles,
        "sum_diff": sd,
        "correlation": correlation_to_value(&p),
        "w": w_to_value(&w),
        "bell": bell_report_to_value(&bell_values(&w, DEFAULT_TOL)),
    }))
}

/// Slack of `target` on a steps×steps grid over (ρ, σ) ∈ [0,2π)² at fixed δ,
/// row-major in ρ.
pub fn landscape(target: &str, delta: f64, steps: usize) -> Result<Value, String> {
    let j = BellFunctional::parse(target).ok_or_else(|| format!("unknown functional {target:?}"))?;
    if !(MIN_LANDSCAPE_STEPS..=MAX_LANDSCAPE_STEPS).contains(&steps) {
        return Err(format!("steps must lie in {MIN_LANDSCAPE_STEPS}..={MAX_LANDSCAPE_STEPS}, got {steps}"));
    }
    let h = std::f64::consts::TAU / steps as f64;
    let values: Vec<f64> = (0..steps * steps)
        .map(|k| target_slack(j, &SumDiffAngles::new((k / steps) as f64 * h, (k % steps) as f64 * h, delta)))
        .collect();
    let (min, max) = values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    Ok(json!({"target": j, "delta": delta, "steps": steps, "min": min, "max": max, "values": values}))
}

/// Exact verdicts for a 3x2 point given as nine w-coordinates ("a/b" strings or integers).
pub fn classify(w_json: &str) -> Result<Value, String> {
    let raw: Vec<Value> = serde_json::from_str(w_json).map_err(|e| e.to_string())?;
    let vals = raw.iter().map(Rational::parse_json).collect::<Result<Vec<_>, _>>()?;
    let w = WCoordinates::from_slice(&vals).ok_or_else(|| format!("expected 9 coordinates, got {}", vals.len()))?;
    let bell = bell_report_to_value(&bell_values(&w, 0.0));
    let p = match correlation_from_w(&w, 0.0) {
        Ok(p) => p,
        Err(e) => return Ok(json!({"w": w_to_value(&w), "nonsignaling": false, "reason": e.to_string(), "bell": bell})),
    };
    let cert = classical_membership(&p, DEFAULT_FUNCTION_CAP, 0.0).map_err(|e| e.to_string())?;
    let (classical, certificate) = match &cert {
        ClassicalCertificate::Classical(mu) => (true, json!({"distribution": distribution_to_value(mu)})),
        ClassicalCertificate::NotClassical(g) => (false, json!({"functional": functional_to_value(g)})),
    };
    Ok(json!({
        "w": w_to_value(&w),
        "nonsignaling": true,
        "symmetric": p.is_symmetric(0.0),
        "classical": classical,
        "certificate": certificate,
        "bell": bell,
    }))
}

fn to_js(r: Result<Value, String>) -> Result<String, JsError> {
    r.map(|v| v.to_string()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = explore)]
pub fn explore_js(alpha: f64, beta: f64, gamma: f64, delta: f64) -> Result<String, JsError> {
    to_js(explore(alpha, beta, gamma, delta))
}

#[wasm_bindgen(js_name = landscape)]
pub fn landscape_js(target: &str, delta: f64, steps: usize) -> Result<String, JsError> {
    to_js(landscape(target, delta, steps))
}

#[wasm_bindgen(js_name = classify)]
pub fn classify_js(w_json: &str) -> Result<String, JsError> {
    to_js(classify(w_json))
}
