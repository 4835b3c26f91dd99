//! Report entries and the serialized verification report.
//!
//! JSON is the normative form. [`VerificationReport::to_canonical_json`]
//! routes through `serde_json::Value`, whose maps are ordered, so every
//! object in the output has sorted keys and identical inputs give identical
//! bytes.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::config::RunConfig;
use crate::Result;

/// Anchor used by entries that check artifact plumbing rather than a
/// mathematical statement.
pub const PLUMBING: &str = "plumbing";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// A finding about the construction being audited. Does not fail a run.
    Flagged,
    Skipped,
}

impl Status {
    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Flagged => "flagged",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub id: String,
    pub description: String,
    pub anchor: String,
    pub status: Status,
    #[serde(default)]
    pub payload: BTreeMap<String, Value>,
}

impl CheckEntry {
    pub fn new(
        id: impl Into<String>,
        description: impl Into<String>,
        anchor: impl Into<String>,
        status: Status,
    ) -> Self {
        CheckEntry {
            id: id.into(),
            description: description.into(),
            anchor: anchor.into(),
            status,
            payload: BTreeMap::new(),
        }
    }

    /// Attach a float. Non-finite values are stored as strings so the
    /// payload survives a JSON round trip.
    pub fn num(mut self, key: &str, x: f64) -> Self {
        self.payload.insert(key.to_owned(), number(x));
        self
    }

    pub fn with(mut self, key: &str, value: impl Serialize) -> Self {
        let v = serde_json::to_value(value).unwrap_or(Value::Null);
        self.payload.insert(key.to_owned(), v);
        self
    }

    pub fn status(mut self, status: Status) -> Self {
        self.status = status;
        self
    }
}

pub(crate) fn number(x: f64) -> Value {
    if x.is_finite() {
        serde_json::Number::from_f64(x)
            .map(Value::Number)
            .unwrap_or(Value::Null)
    } else if x.is_nan() {
        Value::String("NaN".into())
    } else if x > 0.0 {
        Value::String("inf".into())
    } else {
        Value::String("-inf".into())
    }
}

/// Ordered list of entries produced by one module's validator.
pub type Fragment = Vec<CheckEntry>;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub flagged: usize,
    pub skipped: usize,
}

impl Summary {
    pub fn of(checks: &[CheckEntry]) -> Summary {
        let mut s = Summary {
            total: checks.len(),
            ..Summary::default()
        };
        for c in checks {
            match c.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Flagged => s.flagged += 1,
                Status::Skipped => s.skipped += 1,
            }
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub tool: String,
    pub version: String,
    pub config: RunConfig,
    pub checks: Vec<CheckEntry>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new(config: RunConfig, checks: Vec<CheckEntry>) -> Self {
        VerificationReport {
            tool: "wtrisect".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            config,
            summary: Summary::of(&checks),
            checks,
        }
    }

    pub fn has_failures(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }

    pub fn find(&self, id: &str) -> Option<&CheckEntry> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn to_canonical_json(&self) -> Result<String> {
        let value = serde_json::to_value(self)?;
        let mut out = serde_json::to_string_pretty(&value)?;
        out.push('\n');
        Ok(out)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Lossy human-readable rendering.
    pub fn to_markdown(&self) -> String {
        let mut md = String::new();
        let s = &self.summary;
        let _ = writeln!(md, "# {} {} verification report\n", self.tool, self.version);
        let _ = writeln!(
            md,
            "g = {}, h = {}, seed = {}\n",
            self.config.g, self.config.h, self.config.seed
        );
        let _ = writeln!(
            md,
            "{} checks: {} pass, {} fail, {} flagged, {} skipped\n",
            s.total, s.pass, s.fail, s.flagged, s.skipped
        );
        md.push_str("| id | status | anchor | description |\n");
        md.push_str("|---|---|---|---|\n");
        for c in &self.checks {
            let _ = writeln!(
                md,
                "| `{}` | {} | {} | {} |",
                c.id,
                c.status.as_str(),
                c.anchor,
                c.description.replace('|', "\\|")
            );
        }
        md
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn non_finite_payload_is_stringified() {
        let e = CheckEntry::new("x", "d", PLUMBING, Status::Pass)
            .num("a", f64::NAN)
            .num("b", f64::NEG_INFINITY)
            .num("c", 0.25);
        assert_eq!(e.payload["a"], Value::String("NaN".into()));
        assert_eq!(e.payload["b"], Value::String("-inf".into()));
        assert_eq!(e.payload["c"], serde_json::json!(0.25));
    }

    #[test]
    fn summary_counts_statuses() {
        let checks = vec![
            CheckEntry::new("a", "", PLUMBING, Status::Pass),
            CheckEntry::new("b", "", PLUMBING, Status::Flagged),
            CheckEntry::new("c", "", PLUMBING, Status::Flagged),
            CheckEntry::new("d", "", PLUMBING, Status::Skipped),
        ];
        let s = Summary::of(&checks);
        assert_eq!((s.total, s.pass, s.fail, s.flagged, s.skipped), (4, 1, 0, 2, 1));
        let r = VerificationReport::new(RunConfig::default(), checks);
        assert!(!r.has_failures());
    }

    #[test]
    fn canonical_json_sorts_keys_and_round_trips() {
        let checks = vec![CheckEntry::new("z", "zz", PLUMBING, Status::Fail)
            .num("value", 0.1 + 0.2)
            .num("tiny", 1.0e-300)];
        let r = VerificationReport::new(RunConfig::default(), checks);
        let json = r.to_canonical_json().unwrap();
        let checks_at = json.find("\"checks\"").unwrap();
        let config_at = json.find("\"config\"").unwrap();
        let version_at = json.find("\"version\"").unwrap();
        assert!(checks_at < config_at && config_at < version_at);
        let back = VerificationReport::from_json(&json).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_canonical_json().unwrap(), json);
        assert!(back.has_failures());
    }
}
