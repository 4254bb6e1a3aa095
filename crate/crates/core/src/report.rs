//! Deterministic JSON reports.
//!
//! Object keys are emitted in sorted order and every float is rounded to 15
//! significant digits before printing, so identical inputs give identical
//! bytes.

use serde_json::{Map, Value};

/// Significant digits kept in reports.
pub const SIGNIFICANT_DIGITS: usize = 15;

#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub outputs: Value,
    pub tolerances: Value,
}

impl Report {
    pub fn new(command: impl Into<String>, inputs: Value, outputs: Value, tolerances: Value) -> Self {
        Self {
            command: command.into(),
            inputs,
            outputs,
            tolerances,
        }
    }

    pub fn to_value(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), Value::String(self.command.clone()));
        m.insert("inputs".into(), self.inputs.clone());
        m.insert("outputs".into(), self.outputs.clone());
        m.insert("tolerances".into(), self.tolerances.clone());
        round_floats(Value::Object(m))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("JSON values serialize")
    }
}

/// Error document for failed commands.
pub fn error_report(command: &str, kind: &str, message: &str) -> String {
    let v = serde_json::json!({
        "command": command,
        "error": { "kind": kind, "message": message },
    });
    serde_json::to_string_pretty(&v).expect("JSON values serialize")
}

/// Rounds `x` to [`SIGNIFICANT_DIGITS`] significant digits.
pub fn round_significant(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .expect("formatted float parses")
}

fn round_floats(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round_significant(n.as_f64().expect("f64 number"));
            serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(round_floats).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, round_floats(v))).collect()),
        other => other,
    }
}
