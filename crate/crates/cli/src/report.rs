use serde::Serialize;
use serde_json::{Map, Value};

use entwit::hilbert::Tolerances;
use entwit::witnesses::WitnessConfig;

pub const SIGNIFICANT_DIGITS: usize = 12;

#[derive(Debug, Serialize)]
pub struct ReportDocument {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub meta: Meta,
}

#[derive(Debug, Serialize)]
pub struct Meta {
    pub version: String,
    pub tolerances: Value,
    pub cutoffs: Value,
}

impl ReportDocument {
    pub fn new(command: &str, inputs: Value, results: Value, cutoffs: Value) -> Self {
        Self {
            command: command.to_string(),
            inputs: round_value(inputs),
            results: round_value(results),
            meta: Meta {
                version: env!("CARGO_PKG_VERSION").to_string(),
                tolerances: tolerances(),
                cutoffs,
            },
        }
    }
}

fn tolerances() -> Value {
    let t = Tolerances::default();
    let w = WitnessConfig::default();
    serde_json::json!({
        "violation": w.violation_tol,
        "ratio_guard": w.ratio_guard,
        "hermitian": t.hermitian,
        "state_norm": t.state,
        "positivity": t.positivity,
        "variance_floor": t.variance_floor,
    })
}

/// Rounds to [`SIGNIFICANT_DIGITS`]; non-finite values become `null`.
pub fn round_f64(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let rounded: f64 = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .expect("formatted float parses");
    // avoid "-0.0" in output
    let rounded = if rounded == 0.0 { 0.0 } else { rounded };
    serde_json::Number::from_f64(rounded).map_or(Value::Null, Value::Number)
}

pub fn round_value(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => round_f64(n.as_f64().expect("f64 number")),
        Value::Array(items) => Value::Array(items.into_iter().map(round_value).collect()),
        Value::Object(map) => Value::Object(
            map.into_iter()
                .map(|(k, v)| (k, round_value(v)))
                .collect::<Map<_, _>>(),
        ),
        other => other,
    }
}
