use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::clink::LinkError;
use crate::conway_slope::SlopeError;
use crate::corrections::CorrectionError;
use crate::laurent::LaurentError;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("missing sublink data for L' (key \"{0}\" in \"sublinks\")")]
    MissingSublink(String),
    #[error("missing Conway data: field \"{0}\"")]
    MissingConwayData(String),
    #[error("missing field \"underlying_oriented\"")]
    MissingUnderlying,
    #[error("expected a link with {expected} color(s), found {found}")]
    WrongColorCount { expected: String, found: usize },
    #[error("no Torres formula covers this link: {0}")]
    UnsupportedCase(String),
    #[error(transparent)]
    Link(#[from] LinkError),
    #[error(transparent)]
    Correction(#[from] CorrectionError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error("slope: {0}")]
    Slope(SlopeError),
}

impl From<SlopeError> for VerifyError {
    fn from(e: SlopeError) -> Self {
        match e {
            SlopeError::MissingConwayData(f) => VerifyError::MissingConwayData(f),
            SlopeError::MissingSublink => VerifyError::MissingSublink(String::new()),
            SlopeError::Laurent(l) => VerifyError::Laurent(l),
            SlopeError::Correction(c) => VerifyError::Correction(c),
            other => VerifyError::Slope(other),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "==")]
    Eq,
}

/// One checked inequality or equality.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub inputs: Value,
    pub lhs: i64,
    pub rhs: i64,
    pub relation: Relation,
    pub pass: bool,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn le(check: impl Into<String>, inputs: Value, lhs: i64, rhs: i64) -> Self {
        let mut notes = Vec::new();
        if lhs == rhs {
            notes.push("sharp".to_string());
        }
        Self { check: check.into(), inputs, lhs, rhs, relation: Relation::Le, pass: lhs <= rhs, notes }
    }

    pub fn eq(check: impl Into<String>, inputs: Value, lhs: i64, rhs: i64) -> Self {
        Self { check: check.into(), inputs, lhs, rhs, relation: Relation::Eq, pass: lhs == rhs, notes: Vec::new() }
    }

    pub fn skipped(check: impl Into<String>, inputs: Value, reason: impl Into<String>) -> Self {
        Self {
            check: check.into(),
            inputs,
            lhs: 0,
            rhs: 0,
            relation: Relation::Eq,
            pass: true,
            notes: vec![format!("skipped: {}", reason.into())],
        }
    }

    /// A failed record for a limit that did not stabilize.
    pub fn unstable(check: impl Into<String>, inputs: Value, trail: &[i64]) -> Self {
        Self {
            check: check.into(),
            inputs,
            lhs: 0,
            rhs: 0,
            relation: Relation::Eq,
            pass: false,
            notes: vec![format!("limit unstable; sigma trail {trail:?}")],
        }
    }

    pub fn note(mut self, n: impl Into<String>) -> Self {
        self.notes.push(n.into());
        self
    }

    pub fn is_skipped(&self) -> bool {
        self.notes.iter().any(|n| n.starts_with("skipped"))
    }
}
