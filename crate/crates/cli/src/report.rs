//! JSON run reports. The shape is described by `schema/run-report.schema.json`.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InputDigest {
    pub name: String,
    pub path: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn new(name: &str, path: &str, bytes: &[u8]) -> Self {
        InputDigest {
            name: name.to_string(),
            path: path.to_string(),
            sha256: hex::encode(Sha256::digest(bytes)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BudgetInfo {
    pub limit: Option<u64>,
    pub exceeded: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub seed: Option<u64>,
    pub result: Value,
    pub budget: BudgetInfo,
    /// Wall-clock time, present only when requested so that default output
    /// stays byte-identical across runs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// `key: value` lines; nested values are written as compact JSON.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: String| writeln!(out, "{k:<20} {v}").expect("string write");
        line("command", self.command.clone());
        for i in &self.inputs {
            line(&format!("input {}", i.name), format!("{} (sha256 {})", i.path, i.sha256));
        }
        if let Some(seed) = self.seed {
            line("seed", seed.to_string());
        }
        if let Value::Object(map) = &self.result {
            for (k, v) in map {
                line(k, scalar(v));
            }
        } else {
            line("result", scalar(&self.result));
        }
        line(
            "budget",
            match (self.budget.limit, self.budget.exceeded) {
                (_, true) => "exceeded".to_string(),
                (Some(b), false) => format!("{b} (within)"),
                (None, false) => "unlimited".to_string(),
            },
        );
        if let Some(ms) = self.timing_ms {
            line("time", format!("{ms} ms"));
        }
        out
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn digest_and_layout() {
        let d = InputDigest::new("graph", "x.txt", b"");
        assert_eq!(d.sha256, "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
        let r = RunReport {
            schema_version: SCHEMA_VERSION,
            command: "alpha".into(),
            inputs: vec![d],
            seed: None,
            result: json!({"alpha": "1/3"}),
            budget: BudgetInfo { limit: None, exceeded: false },
            timing_ms: None,
        };
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["result"]["alpha"], "1/3");
        assert!(v.get("timing_ms").is_none());
        assert!(r.to_table().contains("1/3"));
    }
}
