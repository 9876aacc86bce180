//! Machine-readable check reports with a byte-deterministic JSON form.

use serde::Serialize;
use serde_json::Value;

pub const REPORT_SCHEMA: &str = "toric-report/1";

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub scenario: String,
    pub id: String,
    pub op: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub anchor: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    pub expected: Value,
    pub computed: Value,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: String,
    pub engine_version: String,
    pub scenario: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub filter: Option<String>,
    pub checks: Vec<CheckOutcome>,
    pub summary: Summary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

impl Report {
    pub fn new(scenario: &str, mut checks: Vec<CheckOutcome>) -> Report {
        checks.sort_by(|a, b| (&a.scenario, &a.id).cmp(&(&b.scenario, &b.id)));
        let passed = checks.iter().filter(|c| c.pass).count();
        let failed = checks.len() - passed;
        Report {
            schema: REPORT_SCHEMA.to_string(),
            engine_version: env!("CARGO_PKG_VERSION").to_string(),
            scenario: scenario.to_string(),
            filter: None,
            checks,
            summary: Summary { total: passed + failed, passed, failed },
            timestamp: None,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    /// Attach a wall-clock stamp; omitted under `--deterministic`.
    pub fn with_timestamp(mut self) -> Report {
        self.timestamp = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .ok()
            .map(|d| d.as_secs());
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
