//! Machine-readable run reports.
//!
//! Reports are deterministic: JSON object keys are sorted, the input digest
//! depends only on the input bytes, and wall-clock timing is included only
//! on request.

use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub command: String,
    /// SHA-256 (hex) of the command line arguments and input file contents.
    pub inputs_digest: String,
    pub results: Map<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
    pub version: String,
}

/// Digest of a sequence of inputs; each part is length-prefixed so that
/// different splits never collide.
pub fn inputs_digest<'a>(parts: impl IntoIterator<Item = &'a [u8]>) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update((p.len() as u64).to_le_bytes());
        h.update(p);
    }
    hex::encode(h.finalize())
}

impl RunReport {
    pub fn new(command: impl Into<String>, inputs_digest: String) -> Self {
        RunReport {
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            inputs_digest,
            results: Map::new(),
            timing_ms: None,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    /// Adds a result field; `value` is any serialisable verdict.
    pub fn insert(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("report values serialise");
        self.results.insert(key.to_string(), v);
    }

    pub fn emit(&self, format: ReportFormat) -> String {
        match format {
            ReportFormat::Json => {
                // Going through `Value` sorts every object's keys.
                let v = serde_json::to_value(self).expect("report serialises");
                let mut s = serde_json::to_string_pretty(&v).expect("value serialises");
                s.push('\n');
                s
            }
            ReportFormat::Text => {
                let mut s = format!("command: {}\n", self.command);
                for (k, v) in &self.results {
                    let shown = match v {
                        Value::String(text) => text.clone(),
                        other => other.to_string(),
                    };
                    s.push_str(&format!("{k}: {shown}\n"));
                }
                s.push_str(&format!("inputs_digest: {}\n", self.inputs_digest));
                if let Some(ms) = self.timing_ms {
                    s.push_str(&format!("timing_ms: {ms:.3}\n"));
                }
                s.push_str(&format!(
                    "version: {} (schema {})\n",
                    self.version, self.schema_version
                ));
                s
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_is_sorted_and_deterministic() {
        let mut r = RunReport::new("chi", inputs_digest([b"dim: 3\npoints:\n".as_slice()]));
        r.insert("zeta", 1);
        r.insert("chi", 0);
        let a = r.emit(ReportFormat::Json);
        assert_eq!(a, r.emit(ReportFormat::Json));
        let chi = a.find("\"chi\"").unwrap();
        let zeta = a.find("\"zeta\"").unwrap();
        assert!(chi < zeta);
        assert!(a.find("\"command\"").unwrap() < a.find("\"version\"").unwrap());
        assert!(!a.contains("timing"));
    }

    #[test]
    fn digest_separates_parts() {
        assert_ne!(
            inputs_digest([b"ab".as_slice(), b"c"]),
            inputs_digest([b"a".as_slice(), b"bc"])
        );
        assert_eq!(inputs_digest([]).len(), 64);
    }
}
