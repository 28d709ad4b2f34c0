//! Machine-readable verification reports.

use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// The time budget ran out before the check finished.
    Exceeded,
    /// Every resampling attempt hit a non-generic parameter set.
    Exhausted,
    Error,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub check: String,
    pub params: Value,
    pub pass: bool,
    pub status: Status,
    pub elapsed_ms: u64,
    pub witness: Option<Value>,
    pub seed: u64,
    pub mode: String,
    /// Weight spaces, instances or sub-checks covered.
    pub covered: Vec<Value>,
}

impl VerificationReport {
    pub fn new(check: &str, params: Value, seed: u64, mode: &str) -> Self {
        VerificationReport {
            check: check.to_string(),
            params,
            pass: true,
            status: Status::Pass,
            elapsed_ms: 0,
            witness: None,
            seed,
            mode: mode.to_string(),
            covered: Vec::new(),
        }
    }

    /// Records a sub-check; the first failure becomes the witness.
    pub fn record(&mut self, item: Value, ok: bool, witness: impl FnOnce() -> Value) {
        self.covered.push(json!({ "item": item, "pass": ok }));
        if !ok {
            if self.pass {
                self.witness = Some(witness());
            }
            self.fail(Status::Fail);
        }
    }

    pub fn fail(&mut self, status: Status) {
        self.pass = false;
        if self.status == Status::Pass || self.status == Status::Fail {
            self.status = status;
        }
    }

    pub fn error(&mut self, status: Status, msg: String) {
        if self.witness.is_none() {
            self.witness = Some(json!({ "error": msg }));
        }
        self.pass = false;
        self.status = status;
    }

    pub fn merge(&mut self, other: VerificationReport) {
        if !other.pass {
            if self.pass {
                self.witness = other.witness.clone();
            }
            self.fail(other.status);
        }
        self.covered.extend(other.covered);
    }
}

/// Human summary table.
pub fn text_summary(reports: &[VerificationReport]) -> String {
    let mut out = format!("{:<22} {:<10} {:>10}  {}\n", "check", "status", "ms", "covered");
    for r in reports {
        let status = serde_json::to_value(r.status).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
        out.push_str(&format!("{:<22} {:<10} {:>10}  {}\n", r.check, status, r.elapsed_ms, r.covered.len()));
    }
    out
}
