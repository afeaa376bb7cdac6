//! Structured verification reports.

use serde_json::{Map, Value};

/// One named check with its verdict and supporting data.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: Value,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub seed: u64,
    pub checks: Vec<Check>,
    /// Command-specific results that are not pass/fail verdicts.
    pub data: Map<String, Value>,
    pub elapsed_ms: Option<u128>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
}

fn status(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

impl Report {
    pub fn new(command: &str, seed: u64) -> Self {
        Report {
            command: command.to_string(),
            seed,
            checks: Vec::new(),
            data: Map::new(),
            elapsed_ms: None,
        }
    }

    pub fn check(&mut self, name: &str, pass: bool, detail: Value) {
        self.checks.push(Check {
            name: name.to_string(),
            pass,
            detail,
        });
    }

    pub fn data(&mut self, key: &str, value: Value) {
        self.data.insert(key.to_string(), value);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> Value {
        let checks = self
            .checks
            .iter()
            .map(|c| {
                let mut entry = Map::new();
                entry.insert("name".into(), c.name.clone().into());
                entry.insert("status".into(), status(c.pass).into());
                if !c.detail.is_null() {
                    entry.insert("detail".into(), c.detail.clone());
                }
                Value::Object(entry)
            })
            .collect();
        let mut out = Map::new();
        out.insert("command".into(), self.command.clone().into());
        out.insert("seed".into(), self.seed.into());
        out.insert("status".into(), status(self.passed()).into());
        out.insert("checks".into(), Value::Array(checks));
        if !self.data.is_empty() {
            out.insert("data".into(), Value::Object(self.data.clone()));
        }
        if let Some(ms) = self.elapsed_ms {
            out.insert("elapsed_ms".into(), Value::from(ms as u64));
        }
        Value::Object(out)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut text =
                    serde_json::to_string_pretty(&self.to_json()).expect("reports serialise");
                text.push('\n');
                text
            }
            Format::Text => {
                let mut text = String::new();
                for c in &self.checks {
                    text.push_str(&format!("{}: {}\n", c.name, status(c.pass)));
                }
                for (key, value) in &self.data {
                    text.push_str(&format!("{key}: {}\n", compact(value)));
                }
                if let Some(ms) = self.elapsed_ms {
                    text.push_str(&format!("elapsed_ms: {ms}\n"));
                }
                text.push_str(&format!("status: {}\n", status(self.passed())));
                text
            }
        }
    }
}

fn compact(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_both_formats() {
        let mut r = Report::new("verify", 3);
        r.check("axioms", true, Value::Null);
        r.check("other", false, serde_json::json!({"why": "x"}));
        r.data("opens", 4.into());
        assert!(!r.passed());
        let text = r.render(Format::Text);
        assert_eq!(text, "axioms: PASS\nother: FAIL\nopens: 4\nstatus: FAIL\n");
        let json = r.render(Format::Json);
        assert!(json.find("\"checks\"").unwrap() < json.find("\"command\"").unwrap());
        assert!(!json.contains("elapsed_ms"));
    }
}
