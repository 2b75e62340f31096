//! The JSON report emitted by every subcommand.
//!
//! Numbers are written as decimal strings so that consumers never lose
//! precision. Apart from `timing`, a report depends only on its inputs.

use std::fmt::Display;
use std::time::Duration;

use hypercolor_core::bounds::ThresholdReport;
use hypercolor_core::Hypergraph;
use serde::Serialize;
use serde_json::{json, Map, Value};

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub instance: Value,
    pub results: Map<String, Value>,
    pub checks: Vec<CheckRecord>,
    pub timing: Timing,
    pub version: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub elapsed_ms: String,
}

pub fn num(value: impl Display) -> Value {
    Value::String(value.to_string())
}

pub fn nums<T: Display>(values: impl IntoIterator<Item = T>) -> Value {
    Value::Array(values.into_iter().map(num).collect())
}

pub fn describe(h: &Hypergraph, edge_order: &str) -> Value {
    json!({
        "n": num(h.n()),
        "m": num(h.m()),
        "r": h.uniformity().map(num),
        "connected": h.is_connected(),
        "edge_order": edge_order,
    })
}

pub fn threshold_json(t: &ThresholdReport) -> Value {
    json!({
        "m": num(t.m),
        "x0": t.x0_decimal,
        "coefficient": num(format!("{:.12}", t.coefficient)),
        "threshold": t.threshold_decimal,
        "k_min": num(t.k_min),
        "near_tie": t.near_tie,
    })
}

impl Report {
    pub fn new(command: &str, instance: Value) -> Self {
        Report {
            command: command.to_string(),
            instance,
            results: Map::new(),
            checks: Vec::new(),
            timing: Timing { elapsed_ms: "0".into() },
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn result(&mut self, key: &str, value: Value) {
        self.results.insert(key.to_string(), value);
    }

    pub fn check(&mut self, name: &str, passed: bool, witness: Option<Value>) {
        self.checks.push(CheckRecord {
            name: name.to_string(),
            passed,
            witness: if passed { None } else { witness },
        });
    }

    pub fn set_elapsed(&mut self, elapsed: Duration) {
        self.timing.elapsed_ms = elapsed.as_millis().to_string();
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// One line per check plus a verdict, for terminals.
    pub fn summary(&self) -> String {
        let mut out = format!("{}: ", self.command);
        out.push_str(if self.passed() {
            "all checks passed\n"
        } else {
            "CHECKS FAILED\n"
        });
        for c in &self.checks {
            out.push_str(&format!("  [{}] {}\n", if c.passed { "ok" } else { "FAIL" }, c.name));
        }
        out
    }
}
