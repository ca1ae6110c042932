//! wasm-bindgen surface for the static demo page in `www/`.
//!
//! Every export returns a JSON string; errors come back as `{"error": ...}`.

use serde::Serialize;
use serde_json::json;
use wasm_bindgen::prelude::*;

use qsum_core::closed::{beta_star_paper, beta_star_poly_paper, beta_star_poly_reference, beta_star_reference, Source};
use qsum_core::numeric::{barnes_f2, f_star_numeric, BigFloat, NumericParams, Which};
use qsum_core::verify::{parse_rational, run_suite, Ranges, VerifyConfig, SUITES};

/// Demo precision; plenty for plotting and much faster than the CLI default.
const PRECISION: usize = 96;
const MAX_POINTS: u32 = 400;
const MAX_RANGE: u32 = 10;

#[derive(Serialize)]
struct Curve {
    q: String,
    k: u32,
    t: Vec<f64>,
    f_star: Vec<f64>,
    barnes: Vec<f64>,
}

/// Samples `F*(t)` for the numbers and `-F_2(t)` on `points` values of `t` in `[t_min, t_max]`, `t < 0`.
pub fn fstar_curve(q: &str, k: u32, t_min: f64, t_max: f64, points: u32) -> Result<String, String> {
    let q = parse_rational(q).ok_or_else(|| format!("q must be an exact fraction such as 3/2 (got '{q}')"))?;
    if !(t_min < t_max && t_max < 0.0 && t_min.is_finite()) {
        return Err("need t_min < t_max < 0".into());
    }
    if !(2..=MAX_POINTS).contains(&points) {
        return Err(format!("points must lie in 2..={MAX_POINTS}"));
    }
    let mut params = NumericParams::new(q.clone());
    params.precision = PRECISION;
    params.tol = 1e-20;
    let mut curve = Curve { q: q.to_string(), k, t: vec![], f_star: vec![], barnes: vec![] };
    for i in 0..points {
        let t = t_min + (t_max - t_min) * f64::from(i) / f64::from(points - 1);
        let tb = BigFloat::from_f64(t, PRECISION);
        let f = f_star_numeric(&tb, k, &params, Which::Numbers).map_err(|e| e.to_string())?;
        let b = barnes_f2(&tb).map_err(|e| e.to_string())?;
        curve.t.push(t);
        curve.f_star.push(f.to_f64());
        curve.barnes.push(-b.to_f64());
    }
    Ok(serde_json::to_string(&curve).expect("curve serializes"))
}

/// One closed-form value with its regularization status and its value at `q = q_at`.
pub fn beta_star(n: u32, k: u32, source: &str, polynomial: bool, q_at: &str) -> Result<String, String> {
    let source: Source = source.parse()?;
    let value = match (source, polynomial) {
        (Source::Paper, false) => beta_star_paper(n, k),
        (Source::Paper, true) => beta_star_poly_paper(n, k),
        (Source::Reference, false) => beta_star_reference(n, k),
        (Source::Reference, true) => beta_star_poly_reference(n, k),
    }
    .map_err(|e| e.to_string())?;
    let config = VerifyConfig::default()
        .with_spot_q(&parse_rational(q_at).ok_or("q must be an exact fraction")?)
        .map_err(|e| e.to_string())?;
    let at = value.value.as_ref().map(|f| match f.eval_at(&config.spot_v) {
        Ok(x) => x.to_string(),
        Err(e) => e.to_string(),
    });
    Ok(json!({
        "status": value.status.as_str(),
        "singular_terms": value.singular_terms,
        "value": value.value.as_ref().map(|f| f.to_canonical_string()),
        "q": config.spot_q().to_string(),
        "at_q": at,
    })
    .to_string())
}

/// Runs one verification suite on a small grid and returns its records.
pub fn check_identity(suite: &str, n_max: u32, k_max: u32, m_max: u32) -> Result<String, String> {
    if !SUITES.contains(&suite) {
        return Err(format!("unknown suite '{suite}'"));
    }
    if n_max.max(k_max).max(m_max) > MAX_RANGE {
        return Err(format!("ranges are capped at {MAX_RANGE} in the browser"));
    }
    let config = VerifyConfig { ranges: Ranges { n_max, k_max, m_max }, ..VerifyConfig::default() };
    let records = run_suite(suite, &config).map_err(|e| e.to_string())?;
    Ok(serde_json::to_string(&records).expect("records serialize"))
}

pub fn suite_names() -> String {
    serde_json::to_string(&SUITES).expect("names serialize")
}

fn to_js(r: Result<String, String>) -> String {
    r.unwrap_or_else(|e| json!({ "error": e }).to_string())
}

#[wasm_bindgen(js_name = fstarCurve)]
pub fn fstar_curve_js(q: &str, k: u32, t_min: f64, t_max: f64, points: u32) -> String {
    to_js(fstar_curve(q, k, t_min, t_max, points))
}

#[wasm_bindgen(js_name = betaStar)]
pub fn beta_star_js(n: u32, k: u32, source: &str, polynomial: bool, q_at: &str) -> String {
    to_js(beta_star(n, k, source, polynomial, q_at))
}

#[wasm_bindgen(js_name = checkIdentity)]
pub fn check_identity_js(suite: &str, n_max: u32, k_max: u32, m_max: u32) -> String {
    to_js(check_identity(suite, n_max, k_max, m_max))
}

#[wasm_bindgen(js_name = suiteNames)]
pub fn suite_names_js() -> String {
    suite_names()
}
