//! Browser bindings: integrality check with classification, the step
//! function `f(x; a, b)` on one period, and the root spectrum on the circle.
//!
//! Every export takes the two parameter lists as comma-separated strings and
//! returns a JSON string; errors come back as `{"error": "..."}`.

use factorial_ratio::{
    breakpoints, classify, eval_f, interlaces, is_integral, min_max_f, normalize, phi_map,
    spectrum_of, Angle, Classification, ExactRational, FactorialParams, SporadicCatalog, Tag,
    Witness,
};
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn parse_list(s: &str) -> Result<Vec<u64>, String> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<u64>()
                .map_err(|_| format!("not a positive integer: {t:?}"))
        })
        .collect()
}

fn parse(a: &str, b: &str) -> Result<FactorialParams, String> {
    let (a, b) = (parse_list(a)?, parse_list(b)?);
    if a.is_empty() || b.is_empty() {
        return Err("both lists need at least one entry".into());
    }
    normalize(&a, &b).map_err(|e| e.to_string())
}

fn classification_json(c: &Classification) -> Value {
    let mut v = json!({ "tag": c.tag.to_string(), "text": c.to_string(), "scale": c.scale });
    if c.tag != Tag::NotIntegral {
        v["degree"] = json!(spectrum_of(&c.primitive).map(|s| s.degree()).unwrap_or(0));
        v["step"] = json!(phi_map(&c.primitive).to_string());
    }
    v
}

/// Integrality verdict, witness and classification.
pub fn check_report(a: &str, b: &str) -> Value {
    let p = match parse(a, b) {
        Ok(p) => p,
        Err(e) => return json!({ "error": e }),
    };
    let mut out = json!({ "a": p.a(), "b": p.b(), "K": p.k(), "L": p.l() });
    match is_integral(&p) {
        Ok(()) => out["integral"] = json!(true),
        Err(Witness::Unbalanced {
            numerator_sum,
            denominator_sum,
        }) => {
            out["integral"] = json!(false);
            out["witness"] = json!(format!(
                "unbalanced: sum a = {numerator_sum}, sum b = {denominator_sum}"
            ));
        }
        Err(w @ Witness::Negative { .. }) => {
            out["integral"] = json!(false);
            out["witness"] = json!(w.to_string());
        }
    }
    match classify(&p, SporadicCatalog::builtin()) {
        Ok(c) => out["classification"] = classification_json(&c),
        Err(e) => out["classification"] = json!({ "note": e.to_string() }),
    }
    out
}

/// Breakpoints of `f` on `[0, 1)` with the constant value on each piece.
pub fn step_report(a: &str, b: &str) -> Value {
    let p = match parse(a, b) {
        Ok(p) => p,
        Err(e) => return json!({ "error": e }),
    };
    if !p.is_balanced() {
        return json!({ "error": "unbalanced parameters: f is unbounded" });
    }
    let mut xs = vec![ExactRational::zero()];
    xs.extend(
        breakpoints(&p)
            .into_iter()
            .filter(|x| *x < ExactRational::one()),
    );
    xs.dedup();
    let pieces: Vec<Value> = xs
        .iter()
        .map(|x| {
            let v = eval_f(&p, x).to_i64().unwrap_or(0);
            json!({ "x": x.to_string(), "at": x.to_f64().unwrap_or(0.0), "value": v })
        })
        .collect();
    let (lo, hi) = min_max_f(&p).unwrap_or((0, 0));
    json!({ "pieces": pieces, "min": lo, "max": hi })
}

/// Spectrum angles in `(0, 1]` and whether they interlace.
pub fn spectrum_report(a: &str, b: &str) -> Value {
    let p = match parse(a, b) {
        Ok(p) => p,
        Err(e) => return json!({ "error": e }),
    };
    let s = match spectrum_of(&p) {
        Ok(s) => s,
        Err(e) => return json!({ "error": e.to_string() }),
    };
    let angles = |ts: &[Angle]| -> Vec<Value> {
        ts.iter()
            .map(|t| json!({ "t": t.to_string(), "at": t.num() as f64 / t.den() as f64 }))
            .collect()
    };
    json!({ "alpha": angles(&s.alpha), "beta": angles(&s.beta), "interlaces": interlaces(&s) })
}

#[wasm_bindgen]
pub fn check(a: &str, b: &str) -> String {
    check_report(a, b).to_string()
}

#[wasm_bindgen]
pub fn step_function(a: &str, b: &str) -> String {
    step_report(a, b).to_string()
}

#[wasm_bindgen]
pub fn spectrum(a: &str, b: &str) -> String {
    spectrum_report(a, b).to_string()
}
