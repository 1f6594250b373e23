use std::fmt::Write as _;
use std::time::Duration;

use serde_json::{json, Map, Value};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Outcome of a command, before rendering.
pub struct Report {
    pub command: String,
    pub verdict: Value,
    pub details: Value,
    pub timing: Map<String, Value>,
}

impl Report {
    pub fn new(command: &str, verdict: impl Into<Value>, details: Value) -> Self {
        Report {
            command: command.to_string(),
            verdict: verdict.into(),
            details,
            timing: Map::new(),
        }
    }

    pub fn to_json(&self, elapsed: Option<Duration>) -> Value {
        let mut out = json!({
            "command": self.command,
            "tool_version": TOOL_VERSION,
            "verdict": self.verdict,
            "details": self.details,
        });
        if let Some(elapsed) = elapsed {
            let mut timing = self.timing.clone();
            timing.insert("total_seconds".into(), json!(elapsed.as_secs_f64()));
            out["timing"] = Value::Object(timing);
        }
        out
    }
}

pub fn error_json(command: &str, message: &str) -> Value {
    json!({
        "command": command,
        "tool_version": TOOL_VERSION,
        "error": message,
    })
}

/// Indented `key: value` rendering of a JSON report.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    render(v, 0, &mut out);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|i| !i.is_object()) && flat_len(v) <= 100 => {
            Some(serde_json::to_string(v).expect("JSON values serialize"))
        }
        _ => None,
    }
}

fn flat_len(v: &Value) -> usize {
    match v {
        Value::Array(items) => items.iter().map(flat_len).sum::<usize>() + 1,
        _ => 1,
    }
}

fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match scalar(x) {
                    Some(s) => writeln!(out, "{pad}{k}: {s}").unwrap(),
                    None => {
                        writeln!(out, "{pad}{k}:").unwrap();
                        render(x, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                match scalar(x) {
                    Some(s) => writeln!(out, "{pad}- {s}").unwrap(),
                    None => {
                        writeln!(out, "{pad}-").unwrap();
                        render(x, indent + 1, out);
                    }
                }
            }
        }
        other => writeln!(out, "{pad}{}", scalar(other).unwrap_or_default()).unwrap(),
    }
}
