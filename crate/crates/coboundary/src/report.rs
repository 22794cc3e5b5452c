//! Outcome and report records shared by every check family.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// A bounded certificate search ran out of degree budget: an honest
    /// "unknown at this bound", deliberately distinct from Fail.
    NotDerivableAtDegree,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub status: CheckStatus,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckOutcome {
    pub fn pass(detail: impl Into<String>) -> Self {
        CheckOutcome { status: CheckStatus::Pass, detail: detail.into(), witness: None }
    }

    pub fn fail(detail: impl Into<String>, witness: impl Into<String>) -> Self {
        CheckOutcome {
            status: CheckStatus::Fail,
            detail: detail.into(),
            witness: Some(witness.into()),
        }
    }

    pub fn not_derivable(detail: impl Into<String>) -> Self {
        CheckOutcome {
            status: CheckStatus::NotDerivableAtDegree,
            detail: detail.into(),
            witness: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

/// One row of a run report; field order is the serialization order.
#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub check: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u32>,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub details: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub version: String,
    /// None unless explicitly stamped: identical runs must serialize to
    /// identical bytes by default.
    pub timestamp: Option<String>,
    pub checks: Vec<CheckRecord>,
}

impl RunReport {
    pub fn new(checks: Vec<CheckRecord>) -> Self {
        let mut checks = checks;
        checks.sort_by(|a, b| (&a.check, a.n, a.seed).cmp(&(&b.check, b.n, b.seed)));
        RunReport {
            version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: None,
            checks,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == CheckStatus::Pass)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }
}
