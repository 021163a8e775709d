//! Machine-readable verification reports.

use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::Result;

/// Bumped on any breaking change to the JSON layout.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check_id: String,
    /// What the check establishes, in words.
    pub anchor: String,
    pub status: Status,
    pub witness: Value,
    pub elapsed_ms: u64,
}

/// Runs `f` and records its verdict; an error becomes a failed record.
pub fn run_check<T: Serialize>(id: &str, anchor: &str, f: impl FnOnce() -> Result<(bool, T)>) -> CheckRecord {
    let start = Instant::now();
    let (status, witness) = match f() {
        Ok((ok, w)) => (Status::from_bool(ok), serde_json::to_value(w).unwrap_or(Value::Null)),
        Err(e) => (Status::Fail, serde_json::json!({ "error": e.to_string() })),
    };
    CheckRecord {
        check_id: id.into(),
        anchor: anchor.into(),
        status,
        witness,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub artifact_version: String,
    pub config: Value,
    pub records: Vec<CheckRecord>,
    pub status: Status,
}

impl Report {
    pub fn new(config: impl Serialize) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            artifact_version: env!("CARGO_PKG_VERSION").into(),
            config: serde_json::to_value(config).unwrap_or(Value::Null),
            records: Vec::new(),
            status: Status::Pass,
        }
    }

    pub fn push(&mut self, r: CheckRecord) {
        if r.status == Status::Fail {
            self.status = Status::Fail;
        }
        self.records.push(r);
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// The same report with every elapsed_ms zeroed, for reproducibility checks.
    pub fn without_timing(&self) -> Report {
        let mut r = self.clone();
        for rec in &mut r.records {
            rec.elapsed_ms = 0;
        }
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn round_trip_and_status() {
        let mut r = Report::new(serde_json::json!({ "type": "A1" }));
        r.push(run_check("ok", "trivially true", || Ok((true, vec![1, 2]))));
        assert!(r.passed());
        r.push(run_check("err", "fails", || -> Result<(bool, ())> { Err(Error::Internal("boom".into())) }));
        assert!(!r.passed());
        assert_eq!(r.records[1].witness["error"], "internal inconsistency: boom");
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }
}
