//! Verification reports shared by every suite.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

/// Exact residuals are printed expressions, numeric ones are max-norms.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Residual {
    Exact(String),
    Norm(f64),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub id: String,
    pub paper_ref: String,
    pub status: Status,
    pub residual: Residual,
    /// Wall time, recorded only when timings are requested.
    pub ms: Option<u64>,
    /// Human-readable notes for the text format: domain restrictions,
    /// failing instances, boundary residuals.
    #[serde(skip)]
    pub notes: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}
