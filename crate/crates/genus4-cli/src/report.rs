//! Errors, exit codes and output formatting.

use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("expectation failed: {0}")]
    Expectation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Expectation(_) => 4,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Parse(_) => "parse",
            CliError::Domain(_) => "domain",
            CliError::Expectation(_) => "expectation",
        }
    }
}

pub fn domain(e: impl std::fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

pub fn parse_err(e: impl std::fmt::Display) -> CliError {
    CliError::Parse(e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Pretty,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub result: Value,
    /// Verbatim quotations backing the result.
    pub anchors: Vec<String>,
    /// False when an asserted expectation failed.
    pub passed: bool,
}

impl Report {
    pub fn new(command: impl Into<String>, result: Value) -> Self {
        Report { command: command.into(), result, anchors: Vec::new(), passed: true }
    }

    pub fn with_anchors(mut self, ids: &[&str]) -> Self {
        self.anchors
            .extend(ids.iter().map(|id| genus4_core::anchors::quote(id).to_string()));
        self
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            4
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("plain data") + "\n",
            Format::Pretty => {
                let mut out = format!("$ {}\n", self.command);
                pretty_value(&self.result, 0, &mut out);
                if !self.anchors.is_empty() {
                    out.push_str("anchors:\n");
                    for a in &self.anchors {
                        out.push_str(&format!("  \"{a}\"\n"));
                    }
                }
                out.push_str(if self.passed { "status: pass\n" } else { "status: FAIL\n" });
                out
            }
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Null => Some("-".into()),
        Value::Bool(_) | Value::Number(_) => Some(v.to_string()),
        _ => None,
    }
}

fn pretty_value(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        pretty_value(x, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            if a.iter().all(|x| scalar(x).is_some()) {
                let parts: Vec<String> = a.iter().filter_map(scalar).collect();
                out.push_str(&format!("{pad}[{}]\n", parts.join(", ")));
            } else {
                for x in a {
                    out.push_str(&format!("{pad}-\n"));
                    pretty_value(x, indent + 1, out);
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}
