//! Record output. Structured output is one JSON object per line; text output
//! renders the same object as `key=value` pairs on one line.

use clap::ValueEnum;
use serde_json::Value;

use gyrogroup::TheoremReport;

use crate::input::{EXIT_CAP, EXIT_HYPOTHESIS, EXIT_INPUT, EXIT_NEGATIVE, EXIT_OK};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) if !s.is_empty() && !s.chars().any(|c| c.is_whitespace() || c == '"' || c == '=') => {
            s.clone()
        }
        other => other.to_string(),
    }
}

pub fn render(record: &Value, format: Format) -> String {
    match format {
        Format::Structured => record.to_string(),
        Format::Text => match record {
            Value::Object(map) => {
                let parts: Vec<String> = map.iter().map(|(k, v)| format!("{k}={}", scalar(v))).collect();
                parts.join(" ")
            }
            other => scalar(other),
        },
    }
}

/// Accumulates rendered lines.
pub struct Sink {
    format: Format,
    pub text: String,
}

impl Sink {
    pub fn new(format: Format) -> Self {
        Sink { format, text: String::new() }
    }

    pub fn record(&mut self, v: &Value) {
        self.text.push_str(&render(v, self.format));
        self.text.push('\n');
    }

    pub fn report(&mut self, r: &TheoremReport) {
        self.record(&serde_json::to_value(r).expect("reports serialize"));
    }
}

/// Exit code for one report.
pub fn report_exit_code(r: &TheoremReport) -> i32 {
    if let Some(e) = &r.error {
        return match e.kind.as_str() {
            "CapExceeded" => EXIT_CAP,
            "HypothesisFailed" | "PreconditionFailed" | "NotAGyrogroup" => EXIT_HYPOTHESIS,
            _ => EXIT_INPUT,
        };
    }
    if !r.hypothesis {
        EXIT_HYPOTHESIS
    } else if r.agreement == Some(false) {
        EXIT_NEGATIVE
    } else {
        EXIT_OK
    }
}

/// Combines per-item exit codes: input errors first, then disagreement,
/// then caps, then unmet hypotheses.
pub fn combine(codes: impl IntoIterator<Item = i32>) -> i32 {
    let codes: Vec<i32> = codes.into_iter().collect();
    [EXIT_INPUT, EXIT_NEGATIVE, EXIT_CAP, EXIT_HYPOTHESIS]
        .into_iter()
        .find(|c| codes.contains(c))
        .unwrap_or(EXIT_OK)
}
