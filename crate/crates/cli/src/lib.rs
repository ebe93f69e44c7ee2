//! Report builders behind the `fratio` binary.
//!
//! Every command produces one JSON object plus an exit code:
//! 0 success / true, 1 definite negative, 2 input error, 3 environment or
//! catalog error.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use factorial_ratio::{
    chebyshev_bounds, classify, completeness_report, eval_u, hypergeom_params, is_integral,
    is_two_valued, normalize, phi_inverse, phi_map, primitive_part, run_search, search,
    spectrum_of, Catalog, Error, ExactRational, FactorialParams, Family, SearchConfig,
    SporadicCatalog, StepFunction, Structure, Tag, Witness,
};
use serde::Deserialize;
use serde_json::{json, Map, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_ENVIRONMENT: i32 = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub exit_code: i32,
    pub report: Value,
}

impl Outcome {
    fn ok(report: Value) -> Self {
        Outcome {
            exit_code: EXIT_OK,
            report,
        }
    }

    fn negative(report: Value) -> Self {
        Outcome {
            exit_code: EXIT_NEGATIVE,
            report,
        }
    }

    fn error(exit_code: i32, message: impl Into<String>) -> Self {
        Outcome {
            exit_code,
            report: json!({ "error": message.into() }),
        }
    }
}

/// `{"a": [...], "b": [...], "label": "..."}`
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsDocument {
    pub a: Vec<u64>,
    pub b: Vec<u64>,
    #[serde(default)]
    pub label: Option<String>,
}

/// `{"plus": [...], "minus": [...]}`: moduli of `+⌊x/m⌋` and `−⌊x/m⌋` terms.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepDocument {
    pub plus: Vec<u64>,
    pub minus: Vec<u64>,
    #[serde(default)]
    pub label: Option<String>,
}

pub fn parse_params(text: &str) -> Result<(FactorialParams, Option<String>), Outcome> {
    let doc: ParamsDocument = serde_json::from_str(text)
        .map_err(|e| Outcome::error(EXIT_INPUT, format!("malformed params document: {e}")))?;
    if doc.a.is_empty() || doc.b.is_empty() {
        return Err(Outcome::error(
            EXIT_INPUT,
            "\"a\" and \"b\" must be nonempty",
        ));
    }
    let p = normalize(&doc.a, &doc.b).map_err(|e| Outcome::error(EXIT_INPUT, e.to_string()))?;
    Ok((p, doc.label))
}

pub fn parse_step(text: &str) -> Result<StepFunction, Outcome> {
    let doc: StepDocument = serde_json::from_str(text)
        .map_err(|e| Outcome::error(EXIT_INPUT, format!("malformed step document: {e}")))?;
    StepFunction::from_moduli(&doc.plus, &doc.minus)
        .map_err(|e| Outcome::error(EXIT_INPUT, e.to_string()))
}

fn rational_string(x: &ExactRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn base_report(p: &FactorialParams, label: &Option<String>) -> Map<String, Value> {
    let mut m = Map::new();
    if let Some(l) = label {
        m.insert("label".into(), json!(l));
    }
    m.insert("a".into(), json!(p.a()));
    m.insert("b".into(), json!(p.b()));
    m
}

fn witness_json(w: &Witness) -> Value {
    match w {
        Witness::Unbalanced {
            numerator_sum,
            denominator_sum,
        } => {
            json!({ "kind": "unbalanced", "sum_a": numerator_sum, "sum_b": denominator_sum })
        }
        Witness::Negative { x, value } => {
            json!({ "kind": "negative", "x": rational_string(x), "f": value })
        }
    }
}

fn step_json(s: &StepFunction) -> Value {
    let moduli: Vec<String> = s
        .terms()
        .iter()
        .map(|&(m, sign)| format!("{}{m}", if sign.coefficient() > 0 { "+" } else { "-" }))
        .collect();
    json!({ "plus": s.plus(), "minus": s.minus(), "moduli": moduli, "display": s.to_string() })
}

fn spot_value(p: &FactorialParams, n: Option<u64>, m: &mut Map<String, Value>) {
    if let Some(n) = n {
        m.insert(
            "u_n".into(),
            json!({ "n": n, "value": rational_string(&eval_u(p, n)) }),
        );
    }
}

/// Integrality check.
pub fn cmd_check(text: &str, n: Option<u64>) -> Outcome {
    let (p, label) = match parse_params(text) {
        Ok(v) => v,
        Err(o) => return o,
    };
    let mut m = base_report(&p, &label);
    let verdict = is_integral(&p);
    m.insert("integral".into(), json!(verdict.is_ok()));
    if let Err(w) = &verdict {
        m.insert("witness".into(), witness_json(w));
    }
    m.insert("balanced".into(), json!(p.is_balanced()));
    m.insert("K".into(), json!(p.k()));
    m.insert("L".into(), json!(p.l()));
    m.insert("gcd".into(), json!(p.gcd()));
    spot_value(&p, n, &mut m);
    if verdict.is_ok() {
        Outcome::ok(Value::Object(m))
    } else {
        Outcome::negative(Value::Object(m))
    }
}

fn family_json(f: Family) -> Value {
    let (x, y) = f.xy();
    json!({ "form": f.index(), "x": x, "y": y, "tag": f.to_string() })
}

fn structure_json(s: &Structure) -> Value {
    match s {
        Structure::Imprimitive { form, x, y } => {
            json!({ "kind": "imprimitive", "form": form, "x": x, "y": y })
        }
        Structure::ScalarShift {
            form,
            x,
            y,
            binomial,
            reversed,
        } => json!({
            "kind": "scalar_shift",
            "form": form,
            "x": x,
            "y": y,
            "shift": "1/2",
            "binomial": { "a": binomial.a(), "b": binomial.b() },
            "reversed": reversed,
        }),
    }
}

fn chebyshev_json(s: &StepFunction) -> Option<Value> {
    let b = chebyshev_bounds(s).ok()?;
    Some(json!({
        "A": format!("{:.10}", b.a),
        "plateau_start": b.plateau_start,
        "lambda": b.lambda,
        "c1": format!("{:.10}", b.c1),
        "c2": format!("{:.10}", b.c2),
    }))
}

/// Reads a catalog file and keeps its sporadic entries.
pub fn load_catalog(path: &Path) -> Result<SporadicCatalog, Outcome> {
    let text = fs::read_to_string(path).map_err(|e| {
        Outcome::error(
            EXIT_ENVIRONMENT,
            format!("cannot read catalog {}: {e}", path.display()),
        )
    })?;
    let c = Catalog::parse(&text).map_err(|e| Outcome::error(EXIT_ENVIRONMENT, e.to_string()))?;
    Ok(SporadicCatalog::from_catalog(&c))
}

/// Full classification.
pub fn cmd_classify(text: &str, catalog: &SporadicCatalog, n: Option<u64>) -> Outcome {
    let (p, label) = match parse_params(text) {
        Ok(v) => v,
        Err(o) => return o,
    };
    let mut m = base_report(&p, &label);
    spot_value(&p, n, &mut m);
    let c = match classify(&p, catalog) {
        Ok(c) => c,
        Err(e @ Error::CatalogIncomplete(_)) => {
            m.insert("error".into(), json!(e.to_string()));
            m.insert(
                "hint".into(),
                json!("run `fratio search` with larger bounds and pass --catalog"),
            );
            return Outcome {
                exit_code: EXIT_ENVIRONMENT,
                report: Value::Object(m),
            };
        }
        Err(e) => {
            m.insert("error".into(), json!(e.to_string()));
            return Outcome {
                exit_code: EXIT_INPUT,
                report: Value::Object(m),
            };
        }
    };
    m.insert("tag".into(), json!(c.tag.to_string()));
    m.insert("classification".into(), json!(c.to_string()));
    if c.tag == Tag::NotIntegral {
        if let Some(w) = &c.witness {
            m.insert("witness".into(), witness_json(w));
        }
        return Outcome::negative(Value::Object(m));
    }
    m.insert("scale".into(), json!(c.scale));
    m.insert(
        "primitive".into(),
        json!({ "a": c.primitive.a(), "b": c.primitive.b() }),
    );
    match c.tag {
        Tag::Family(f) => {
            m.insert("family".into(), family_json(f));
        }
        Tag::Sporadic(id) => {
            m.insert("sporadic_id".into(), json!(id));
        }
        Tag::NotIntegral => unreachable!(),
    }
    if !c.also.is_empty() {
        m.insert(
            "also".into(),
            json!(c.also.iter().map(|f| f.to_string()).collect::<Vec<_>>()),
        );
    }
    if let Some(s) = &c.structure {
        m.insert("structure".into(), structure_json(s));
    }
    let degree = spectrum_of(&c.primitive).map(|s| s.degree()).unwrap_or(0);
    m.insert("d".into(), json!(degree));
    let step = phi_map(&c.primitive);
    m.insert("step".into(), step_json(&step));
    if is_two_valued(&step).unwrap_or(false) {
        if let Some(cb) = chebyshev_json(&step) {
            m.insert("chebyshev".into(), cb);
        }
    }
    Outcome::ok(Value::Object(m))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    ToStep,
    ToFactorial,
}

/// Converts between factorial parameters and step-function moduli.
pub fn cmd_convert(text: &str, direction: Direction) -> Outcome {
    match direction {
        Direction::ToStep => {
            let (p, label) = match parse_params(text) {
                Ok(v) => v,
                Err(o) => return o,
            };
            let mut m = base_report(&p, &label);
            let (d, prim) = primitive_part(&p);
            if d > 1 {
                m.insert(
                    "warning".into(),
                    json!(format!(
                        "entries share the factor {d}; converted the reduced parameters"
                    )),
                );
            }
            m.insert("step".into(), step_json(&phi_map(&prim)));
            Outcome::ok(Value::Object(m))
        }
        Direction::ToFactorial => {
            let s = match parse_step(text) {
                Ok(s) => s,
                Err(o) => return o,
            };
            let mut m = Map::new();
            m.insert("step".into(), step_json(&s));
            let g = s.moduli_gcd();
            if g > 1 {
                m.insert(
                    "warning".into(),
                    json!(format!("moduli share the factor {g}; it was divided out")),
                );
            }
            let p = phi_inverse(&s);
            m.insert("a".into(), json!(p.a()));
            m.insert("b".into(), json!(p.b()));
            Outcome::ok(Value::Object(m))
        }
    }
}

/// Hypergeometric parameters of the generating function.
pub fn cmd_hypergeom(text: &str, expand: bool) -> Outcome {
    let (p, label) = match parse_params(text) {
        Ok(v) => v,
        Err(o) => return o,
    };
    let mut m = base_report(&p, &label);
    let h = match hypergeom_params(&p) {
        Ok(h) => h,
        Err(e) => return Outcome::error(EXIT_INPUT, e.to_string()),
    };
    let d = h.order();
    let names =
        |xs: &[factorial_ratio::Angle]| xs.iter().map(|t| t.to_string()).collect::<Vec<_>>();
    m.insert("d".into(), json!(d));
    m.insert("series".into(), json!(format!("{}F{}", d, d - 1)));
    m.insert("upper".into(), json!(names(&h.upper)));
    m.insert("lower".into(), json!(names(&h.lower)));
    m.insert("C".into(), json!(h.scale.to_string()));
    m.insert(
        "C_factors".into(),
        json!({ "numerator": h.scale.numerator, "denominator": h.scale.denominator }),
    );
    if expand {
        m.insert(
            "C_expanded".into(),
            json!(rational_string(&h.scale.value())),
        );
    }
    Outcome::ok(Value::Object(m))
}

/// Chebyshev constants from the step function of primitive integral parameters.
pub fn cmd_chebyshev(text: &str) -> Outcome {
    let (p, label) = match parse_params(text) {
        Ok(v) => v,
        Err(o) => return o,
    };
    let mut m = base_report(&p, &label);
    let (_, prim) = primitive_part(&p);
    let step = phi_map(&prim);
    m.insert("step".into(), step_json(&step));
    match is_two_valued(&step) {
        Ok(true) => {}
        Ok(false) => {
            m.insert(
                "error".into(),
                json!("step function is not two-valued (needs integral parameters with L = K + 1)"),
            );
            return Outcome::negative(Value::Object(m));
        }
        Err(e) => {
            m.insert(
                "error".into(),
                json!(format!("{e} (parameters are unbalanced)")),
            );
            return Outcome::negative(Value::Object(m));
        }
    }
    match chebyshev_json(&step) {
        Some(cb) => {
            if let Value::Object(cb) = cb {
                m.extend(cb);
            }
            Outcome::ok(Value::Object(m))
        }
        None => {
            m.insert("error".into(), json!("no initial plateau"));
            Outcome::negative(Value::Object(m))
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub config: SearchConfig,
    pub out: Option<std::path::PathBuf>,
    pub checkpoint_dir: Option<std::path::PathBuf>,
    pub sporadic_only: bool,
}

/// Runs the search, writes the catalog file, reports completeness.
pub fn cmd_search(opts: &SearchOptions) -> Outcome {
    if let Err(e) = opts.config.validate() {
        return Outcome::error(EXIT_INPUT, e.to_string());
    }
    let catalog = match &opts.checkpoint_dir {
        Some(dir) => match search::run_search_checkpointed(&opts.config, dir) {
            Ok(c) => c,
            Err(e) => {
                return Outcome::error(
                    EXIT_INPUT,
                    format!("checkpoint directory {}: {e}", dir.display()),
                )
            }
        },
        None => match run_search(&opts.config) {
            Ok(c) => c,
            Err(e) => return Outcome::error(EXIT_INPUT, e.to_string()),
        },
    };
    let report = completeness_report(&catalog);
    let written = if opts.sporadic_only {
        let entries = catalog.sporadics().cloned().collect();
        Catalog {
            bounds: catalog.bounds,
            entries,
        }
    } else {
        catalog
    };
    if let Some(path) = &opts.out {
        if let Err(e) = fs::write(path, written.to_text()) {
            return Outcome::error(EXIT_INPUT, format!("cannot write {}: {e}", path.display()));
        }
    }
    let mut v = serde_json::to_value(&report).expect("report serializes");
    if let (Value::Object(m), Some(path)) = (&mut v, &opts.out) {
        m.insert("catalog".into(), json!(path.display().to_string()));
    }
    let code = if report.unclassified.is_empty() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    };
    Outcome {
        exit_code: code,
        report: v,
    }
}

/// Human-readable rendering of a report: one `key: value` line per field.
pub fn render_pretty(v: &Value) -> String {
    let mut out = String::new();
    match v {
        Value::Object(m) => {
            for (k, val) in m {
                let shown = match val {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                let _ = writeln!(out, "{k}: {shown}");
            }
        }
        other => {
            let _ = writeln!(out, "{other}");
        }
    }
    out
}
