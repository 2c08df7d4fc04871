//! Structured run reports.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Whether the sought object was found or the checked property held.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Success,
    Negative,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Success
        } else {
            Status::Negative
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Success => 0,
            Status::Negative => 1,
        }
    }
}

/// What a command produced before it is rendered.
pub struct CommandOutput {
    pub status: Status,
    /// Short outcome word such as `present`, `absent`, `holds`.
    pub outcome: String,
    /// Human-readable body for the text format.
    pub lines: Vec<String>,
    /// Machine-readable body for the structured format.
    pub result: Value,
    pub seed: Option<u64>,
    /// Output that bypasses the report wrapper, such as a set system or CSV.
    pub raw: Option<String>,
}

impl CommandOutput {
    pub fn new(status: Status, outcome: impl Into<String>) -> Self {
        CommandOutput {
            status,
            outcome: outcome.into(),
            lines: Vec::new(),
            result: Value::Null,
            seed: None,
            raw: None,
        }
    }

    pub fn raw(text: String) -> Self {
        CommandOutput {
            raw: Some(text),
            ..CommandOutput::new(Status::Success, "ok")
        }
    }

    pub fn line(mut self, line: impl Into<String>) -> Self {
        self.lines.push(line.into());
        self
    }

    pub fn result(mut self, result: impl Serialize) -> Self {
        self.result = serde_json::to_value(result).expect("results serialise");
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }
}

#[derive(Serialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

/// A self-contained record of one invocation. Apart from `timing`, identical
/// arguments and input give identical reports.
#[derive(Serialize)]
pub struct RunReport {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub seed: Option<u64>,
    /// SHA-256 of the raw input bytes, when the command read a set system.
    pub input_digest: Option<String>,
    pub outcome: String,
    pub result: Value,
    pub timing: Timing,
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}
