//! Versioned JSON envelope for command results.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: u32,
    pub command: String,
    pub inputs: Value,
    pub result: Value,
    pub version: String,
    /// Wall time in milliseconds; not hashed.
    pub elapsed_ms: f64,
    /// SHA-256 of the canonical JSON of `schema`, `command`, `inputs`, `result`.
    pub certificate_hash: String,
}

impl RunReport {
    pub fn new(command: &str, inputs: Value, result: Value, elapsed_ms: f64) -> Self {
        let mut r = RunReport {
            schema: SCHEMA,
            command: command.to_string(),
            inputs,
            result,
            version: env!("CARGO_PKG_VERSION").to_string(),
            elapsed_ms,
            certificate_hash: String::new(),
        };
        r.certificate_hash = r.payload_hash();
        r
    }

    pub fn payload_hash(&self) -> String {
        let payload = serde_json::json!({
            "schema": self.schema,
            "command": self.command,
            "inputs": self.inputs,
            "result": self.result,
        });
        let bytes = serde_json::to_vec(&payload).expect("json values serialize");
        Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn verify_hash(&self) -> bool {
        self.certificate_hash == self.payload_hash()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn hash_ignores_timing_and_key_order() {
        let a = RunReport::new("nc", json!({"b": 1, "a": [1, 2]}), json!({"passes": true}), 1.0);
        let b = RunReport::new("nc", json!({"a": [1, 2], "b": 1}), json!({"passes": true}), 99.0);
        assert_eq!(a.certificate_hash, b.certificate_hash);
        assert_eq!(a.certificate_hash.len(), 64);
        let c = RunReport::new("nc", json!({"a": [1, 2], "b": 2}), json!({"passes": true}), 1.0);
        assert_ne!(a.certificate_hash, c.certificate_hash);
    }

    #[test]
    fn round_trip() {
        let a = RunReport::new("classify", json!({"matrix": "2,1;0,3"}), json!({"branch": "klein_four"}), 0.5);
        let back: RunReport = serde_json::from_str(&serde_json::to_string(&a).unwrap()).unwrap();
        assert_eq!(back, a);
        assert!(back.verify_hash());
    }
}
