//! Output document model and emitters.
//!
//! Every command emits one [`OutputDocument`]: echoed inputs, a
//! command-specific results payload, and a list of verdicts. JSON is the
//! canonical format; CSV and Markdown are available for the tabular
//! commands. Output is deterministic: inputs are a sorted map, results are
//! built from structs with fixed field order, and no hash-map iteration
//! reaches the emitters. Rationals serialize as "p/q" strings, cyclotomic
//! values as {conductor, coeffs}.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Verdict {
    pub check: String,
    pub pass: bool,
    pub expected: Value,
    pub actual: Value,
}

impl Verdict {
    pub fn new(check: impl Into<String>, pass: bool, expected: Value, actual: Value) -> Self {
        Verdict {
            check: check.into(),
            pass,
            expected,
            actual,
        }
    }

    /// A verdict whose expected value is the pass condition itself.
    pub fn check(check: impl Into<String>, pass: bool, actual: Value) -> Self {
        Verdict {
            check: check.into(),
            pass,
            expected: Value::Bool(true),
            actual,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct OutputDocument {
    pub schema_version: String,
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub results: Value,
    pub verdicts: Vec<Verdict>,
}

impl OutputDocument {
    pub fn new(command: &str) -> Self {
        OutputDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            command: command.to_string(),
            inputs: BTreeMap::new(),
            results: Value::Null,
            verdicts: Vec::new(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.inputs.insert(key.to_string(), value.to_string());
        self
    }

    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable document");
        s.push('\n');
        s
    }
}

/// A rectangular table for the CSV and Markdown emitters.
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.header.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        out.push_str("| ");
        out.push_str(&self.header.join(" | "));
        out.push_str(" |\n|");
        for _ in &self.header {
            out.push_str(" --- |");
        }
        out.push('\n');
        for row in &self.rows {
            out.push_str("| ");
            out.push_str(&row.join(" | "));
            out.push_str(" |\n");
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
    Md,
}

impl OutputFormat {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "json" => Some(OutputFormat::Json),
            "csv" => Some(OutputFormat::Csv),
            "md" => Some(OutputFormat::Md),
            _ => None,
        }
    }
}
