use std::fmt;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use hyperlin_core::Hypergraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremCheck {
    pub name: &'static str,
    pub status: Status,
    pub witness: Value,
}

/// Everything a command prints on success.
#[derive(Debug, Serialize)]
pub struct AnalysisReport {
    /// SHA-256 of the canonical JSON of the input hypergraph.
    pub input_digest: String,
    pub command: &'static str,
    pub parameters: Value,
    pub results: Value,
    pub theorem_checks: Vec<TheoremCheck>,
}

impl AnalysisReport {
    pub fn new(h: &Hypergraph, command: &'static str, parameters: Value, results: Value) -> Self {
        Self {
            input_digest: digest(h),
            command,
            parameters,
            results,
            theorem_checks: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization is infallible")
    }
}

pub fn digest(h: &Hypergraph) -> String {
    hex::encode(Sha256::digest(h.to_json().as_bytes()))
}

#[derive(Debug)]
pub enum Failure {
    Input(anyhow::Error),
    Precondition(hyperlin_core::Error),
    Theorem { report: String, failed: Vec<&'static str> },
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Precondition(_) => 2,
            Failure::Theorem { .. } => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(e) => write!(f, "error: {e:#}"),
            Failure::Precondition(e) => write!(f, "error: {}: {e}", e.name()),
            Failure::Theorem { failed, .. } => write!(f, "error: theorem checks failed: {}", failed.join(", ")),
        }
    }
}

impl From<hyperlin_core::Error> for Failure {
    fn from(e: hyperlin_core::Error) -> Self {
        Failure::Precondition(e)
    }
}
