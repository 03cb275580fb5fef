use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

/// Uniform envelope for every subcommand's JSON output.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub inputs: Value,
    pub outputs: Value,
    pub passed: bool,
    pub elapsed_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Report {
    pub fn new(command: &'static str, inputs: Value, started: Instant) -> Self {
        Self {
            command,
            inputs,
            outputs: json!({}),
            passed: true,
            elapsed_ms: started.elapsed().as_millis().try_into().unwrap_or(u64::MAX),
            error: None,
        }
    }

    pub fn with_outputs(mut self, outputs: Value, passed: bool) -> Self {
        self.outputs = outputs;
        self.passed = passed;
        self
    }

    pub fn failed(mut self, error: impl ToString) -> Self {
        self.passed = false;
        self.error = Some(error.to_string());
        self
    }
}
