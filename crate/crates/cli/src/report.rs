use std::path::Path;

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

/// Exit 1 for `Fails`, 0 for `Holds`; malformed input never produces a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Holds,
    Fails,
}

impl Outcome {
    pub fn from_bool(holds: bool) -> Self {
        if holds {
            Outcome::Holds
        } else {
            Outcome::Fails
        }
    }
}

#[derive(Debug)]
pub enum Failure {
    Malformed(String),
}

impl<E: std::error::Error> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Malformed(e.to_string())
    }
}

/// Everything printed on success. Contains no timing, so identical inputs give identical bytes.
pub struct Report {
    pub command: &'static str,
    pub seed: u64,
    pub inputs: Vec<Value>,
    pub outcome: Outcome,
    pub result: Value,
    pub certificates: Vec<Value>,
}

impl Report {
    pub fn new(command: &'static str, seed: u64) -> Self {
        Report {
            command,
            seed,
            inputs: Vec::new(),
            outcome: Outcome::Holds,
            result: Value::Null,
            certificates: Vec::new(),
        }
    }

    /// Records `path` under `role` with the SHA-256 of its bytes.
    pub fn input(&mut self, role: &str, path: &Path) -> Result<(), Failure> {
        let bytes =
            std::fs::read(path).map_err(|e| Failure::Malformed(format!("cannot read `{}`: {e}", path.display())))?;
        let digest: String = Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect();
        self.inputs.push(json!({ "role": role, "path": path.display().to_string(), "sha256": digest }));
        Ok(())
    }

    pub fn render(&self) -> String {
        let value = json!({
            "command": self.command,
            "seed": self.seed,
            "inputs": self.inputs,
            "outcome": match self.outcome { Outcome::Holds => "holds", Outcome::Fails => "fails" },
            "result": self.result,
            "certificates": self.certificates,
        });
        tropx_core::io::to_canonical_string(&value)
    }
}
