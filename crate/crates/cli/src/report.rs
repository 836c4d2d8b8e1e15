use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub result: Value,
    pub provenance: Vec<String>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(command: &str, inputs: Value) -> Self {
        Report {
            command: command.to_string(),
            inputs,
            result: Value::Null,
            provenance: Vec::new(),
            warnings: Vec::new(),
        }
    }

    pub fn result(mut self, result: impl Serialize) -> Self {
        self.result = serde_json::to_value(result).expect("result serializes");
        self
    }

    pub fn provenance(mut self, text: &str) -> Self {
        self.provenance.push(text.to_string());
        self
    }

    pub fn warn(mut self, text: impl Into<String>) -> Self {
        self.warnings.push(text.into());
        self
    }

    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        serde_json::to_string_pretty(&sorted(value)).expect("json")
    }

    /// Scalar fields of `result` as aligned `key  value` lines.
    pub fn table(&self) -> String {
        let mut rows: Vec<(String, String)> = Vec::new();
        flatten("", &self.result, &mut rows);
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out = format!("{}\n", self.command);
        for (k, v) in rows {
            out.push_str(&format!("  {k:<width$}  {v}\n"));
        }
        for w in &self.warnings {
            out.push_str(&format!("  warning: {w}\n"));
        }
        out
    }
}

fn flatten(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, inner) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, inner, rows);
            }
        }
        Value::Array(items) if items.iter().any(|i| i.is_object()) => {
            rows.push((prefix.to_string(), format!("[{} entries]", items.len())));
        }
        other => rows.push((prefix.to_string(), other.to_string())),
    }
}

/// Recursively key-sorted copy, independent of serde_json's map feature flags.
pub fn sorted(v: Value) -> Value {
    match v {
        Value::Object(map) => {
            let mut entries: Vec<(String, Value)> = map.into_iter().collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            let mut out = Map::new();
            for (k, inner) in entries {
                out.insert(k, sorted(inner));
            }
            Value::Object(out)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(sorted).collect()),
        other => other,
    }
}

pub fn error_json(kind: &str, message: &str) -> String {
    let v = serde_json::json!({"error": {"kind": kind, "message": message}});
    serde_json::to_string_pretty(&sorted(v)).expect("json")
}
