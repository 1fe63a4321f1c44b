//! The four-part report and its json, csv and text renderings.

use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub input: Map<String, Value>,
    pub result: Map<String, Value>,
    pub witnesses: Map<String, Value>,
    pub residuals: Map<String, Value>,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut top = Map::new();
                top.insert("input".into(), Value::Object(self.input.clone()));
                top.insert("result".into(), Value::Object(self.result.clone()));
                top.insert("witnesses".into(), Value::Object(self.witnesses.clone()));
                top.insert("residuals".into(), Value::Object(self.residuals.clone()));
                let mut s = serde_json::to_string_pretty(&Value::Object(top)).expect("serializable");
                s.push('\n');
                s
            }
            Format::Csv => {
                let cols: Vec<(String, &Value)> = self
                    .result
                    .iter()
                    .chain(&self.residuals)
                    .filter(|(_, v)| !v.is_object() && !v.is_array())
                    .map(|(k, v)| (k.clone(), v))
                    .collect();
                let header: Vec<&str> = cols.iter().map(|(k, _)| k.as_str()).collect();
                let row: Vec<String> = cols.iter().map(|(_, v)| scalar(v)).collect();
                format!("{}\n{}\n", header.join(","), row.join(","))
            }
            Format::Text => {
                let mut out = String::new();
                for (title, map) in [
                    ("input", &self.input),
                    ("result", &self.result),
                    ("witnesses", &self.witnesses),
                    ("residuals", &self.residuals),
                ] {
                    if map.is_empty() {
                        continue;
                    }
                    out.push_str(title);
                    out.push_str(":\n");
                    for (k, v) in map {
                        out.push_str(&format!("  {k}: {}\n", scalar(v)));
                    }
                }
                out
            }
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}
