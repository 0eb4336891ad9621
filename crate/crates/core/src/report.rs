//! Report records shared by the pipelines and the JSON output.
//!
//! Top-level JSON record:
//!
//! ```text
//! { "tool_version": "...", "command": "...", "params": {...},
//!   "stages": [ { "name": "...", "pass": true, "witness": "...", "elapsed_ms": 1.25 } ],
//!   "verdict": "...", <command specific fields> }
//! ```
//!
//! `witness` is present only on failing stages that found one; `elapsed_ms`
//! is omitted when timings are disabled, which makes the output
//! byte-deterministic.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Stage {
    pub name: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl Stage {
    pub fn new(name: impl Into<String>, pass: bool, witness: Option<String>) -> Self {
        Stage {
            name: name.into(),
            pass,
            witness,
            elapsed_ms: None,
        }
    }

    pub fn passed(name: impl Into<String>) -> Self {
        Stage::new(name, true, None)
    }

    pub fn failed(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Stage::new(name, false, Some(witness.into()))
    }
}

/// Runs a stage body and records its wall time.
pub fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let start = Instant::now();
    let out = f();
    let ms = start.elapsed().as_secs_f64() * 1000.0;
    (out, (ms * 1000.0).round() / 1000.0)
}

/// Collects stages in order and stops at the first failure.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct StageLog {
    pub stages: Vec<Stage>,
}

impl StageLog {
    pub fn push(&mut self, mut stage: Stage, elapsed_ms: f64) -> bool {
        stage.elapsed_ms = Some(elapsed_ms);
        let pass = stage.pass;
        self.stages.push(stage);
        pass
    }

    pub fn all_pass(&self) -> bool {
        self.stages.iter().all(|s| s.pass)
    }

    pub fn first_failure(&self) -> Option<&Stage> {
        self.stages.iter().find(|s| !s.pass)
    }

    pub fn get(&self, name: &str) -> Option<&Stage> {
        self.stages.iter().find(|s| s.name == name)
    }

    pub fn passed(&self, name: &str) -> bool {
        self.get(name).is_some_and(|s| s.pass)
    }
}

/// One machine-readable record of a command run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub tool_version: String,
    pub command: String,
    pub params: BTreeMap<String, i64>,
    pub stages: Vec<Stage>,
    pub verdict: String,
    #[serde(flatten)]
    pub details: BTreeMap<String, serde_json::Value>,
}

impl RunRecord {
    pub fn new(
        command: &str,
        params: BTreeMap<String, i64>,
        stages: Vec<Stage>,
        verdict: String,
    ) -> Self {
        RunRecord {
            tool_version: TOOL_VERSION.to_string(),
            command: command.to_string(),
            params,
            stages,
            verdict,
            details: BTreeMap::new(),
        }
    }

    pub fn detail(mut self, key: &str, value: impl Serialize) -> Self {
        self.details.insert(
            key.to_string(),
            serde_json::to_value(value).expect("report values serialize"),
        );
        self
    }

    pub fn strip_timings(&mut self) {
        for s in &mut self.stages {
            s.elapsed_ms = None;
        }
    }

    pub fn all_pass(&self) -> bool {
        self.stages.iter().all(|s| s.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_layout() {
        let mut log = StageLog::default();
        log.push(Stage::passed("order"), 1.5);
        log.push(Stage::failed("type", "o(r0*r1) = 2"), 0.25);
        let mut rec = RunRecord::new(
            "theorem",
            [("n".to_string(), 10)].into_iter().collect(),
            log.stages.clone(),
            "FAIL".into(),
        )
        .detail("group_order", 1024);
        let json = rec.to_json();
        assert!(json.starts_with("{\"tool_version\":"));
        assert!(json.contains("\"group_order\":1024"));
        assert!(json.contains("\"witness\":\"o(r0*r1) = 2\""));
        rec.strip_timings();
        assert!(!rec.to_json().contains("elapsed_ms"));
        let back: RunRecord = serde_json::from_str(&rec.to_json()).unwrap();
        assert_eq!(back, rec);
        assert!(!log.all_pass());
        assert_eq!(log.first_failure().unwrap().name, "type");
    }
}
