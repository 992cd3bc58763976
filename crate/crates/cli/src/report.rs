//! Report artifacts and their text and JSON renderings.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;
use serde_json::Value;

use crate::config::{Format, RunConfig};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Printed form of a nonzero residual, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool) -> Self {
        Check { name: name.into(), passed, residual: None, detail: None }
    }

    pub fn with_residual(mut self, r: impl Into<String>) -> Self {
        self.residual = Some(r.into());
        self
    }

    pub fn with_detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }
}

/// A resolution of an ambiguity in the source formulas, always reported.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Arbitration {
    pub name: String,
    pub chosen: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alternative: Option<String>,
    pub evidence: String,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Manifest {
    pub config: RunConfig,
    pub arbitration: Vec<Arbitration>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub manifest: Manifest,
    pub checks: Vec<Check>,
    pub results: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, u128>>,
}

impl Report {
    pub fn new(cfg: &RunConfig, arbitration: Vec<Arbitration>) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command: cfg.command.name().into(),
            manifest: Manifest { config: cfg.clone(), arbitration },
            checks: Vec::new(),
            results: BTreeMap::new(),
            timings_ms: cfg.timings.then(BTreeMap::new),
        }
    }

    pub fn check(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn result(&mut self, key: impl Into<String>, v: impl Serialize) {
        self.results.insert(key.into(), serde_json::to_value(v).expect("results are plain data"));
    }

    pub fn time(&mut self, key: &str, ms: u128) {
        if let Some(t) = &mut self.timings_ms {
            t.insert(key.into(), ms);
        }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render(&self, f: Format) -> String {
        match f {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Text => self.to_text(),
        }
    }

    fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# bcov {} (schema {})", self.command, self.schema_version);
        for line in self.manifest.config.to_toml().lines().filter(|l| !l.is_empty()) {
            let _ = writeln!(s, "# config {line}");
        }
        for a in &self.manifest.arbitration {
            let alt = a.alternative.as_ref().map(|x| format!(" (alternative: {x})")).unwrap_or_default();
            let _ = writeln!(s, "# arbitration {}: {}{alt}; {}", a.name, a.chosen, a.evidence);
        }
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            let _ = write!(s, "{tag} {}", c.name);
            if let Some(r) = &c.residual {
                let _ = write!(s, " [{r}]");
            }
            if let Some(d) = &c.detail {
                let _ = write!(s, " -- {d}");
            }
            s.push('\n');
        }
        for (k, v) in &self.results {
            match v {
                Value::String(x) => {
                    let _ = writeln!(s, "{k}: {x}");
                }
                other => {
                    let _ = writeln!(s, "{k}: {other}");
                }
            }
        }
        if let Some(t) = &self.timings_ms {
            for (k, ms) in t {
                let _ = writeln!(s, "# time {k}: {ms} ms");
            }
        }
        s
    }
}
