//! Job reports: one JSON object per run, byte-stable for a given config.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::config::{Command, JobConfig, SCHEMA_VERSION};

/// One sub-check. `witnesses` holds the failure evidence, if any.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckRecord {
    pub check: String,
    pub pass: bool,
    pub data: Value,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Value>,
}

impl CheckRecord {
    pub fn new(check: &str, pass: bool, data: Value) -> Self {
        CheckRecord {
            check: check.to_string(),
            pass,
            data,
            witnesses: Vec::new(),
        }
    }

    pub fn with_witnesses(mut self, witnesses: Vec<Value>) -> Self {
        self.witnesses = witnesses;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobReport {
    pub schema_version: u32,
    pub command: Command,
    /// The parsed config, re-serialized.
    pub config: JobConfig,
    pub pass: bool,
    pub details: Vec<CheckRecord>,
}

impl JobReport {
    /// `pass` is the conjunction of the records; an empty job does not pass.
    pub fn new(command: Command, config: JobConfig, details: Vec<CheckRecord>) -> Self {
        let pass = !details.is_empty() && details.iter().all(|d| d.pass);
        JobReport {
            schema_version: SCHEMA_VERSION,
            command,
            config,
            pass,
            details,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    /// Short human-readable summary.
    pub fn summary(&self) -> String {
        let mut out = format!("{}: {}\n", self.command.name(), if self.pass { "PASS" } else { "FAIL" });
        for d in &self.details {
            out.push_str(&format!("  {:<24} {}", d.check, if d.pass { "pass" } else { "FAIL" }));
            if !d.witnesses.is_empty() {
                out.push_str(&format!(" ({} witness(es))", d.witnesses.len()));
            }
            out.push('\n');
        }
        out
    }
}
