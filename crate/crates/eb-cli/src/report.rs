//! JSON report shapes. Struct field order is the serialization order and is
//! part of the output contract: reports for a fixed input and fixed flags
//! must be byte-identical run to run, so nothing nondeterministic may appear
//! outside the opt-in `timings` block.

use std::collections::BTreeMap;

use eb_core::solver::EbResult;
use eb_core::structure::{CrtCertificate, StructureReport};
use serde::Serialize;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Serialize)]
pub struct DavenportSection {
    pub invariant_factors: Vec<u64>,
    /// `1 + sum(d_i - 1)` for p-groups, `m + n - 1` for rank two; absent
    /// when no closed form applies.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: &'static str,
    pub ring: String,
    pub order: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub structure: Option<StructureReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eb: Option<EbResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificates: Option<Vec<CrtCertificate>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub davenport: Option<DavenportSection>,
    /// Wall-clock milliseconds per phase; only present behind `--timings`,
    /// which forfeits byte-for-byte reproducibility.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<&'static str, u128>>,
}

impl Report {
    pub fn new(ring: impl Into<String>, order: usize) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            ring: ring.into(),
            order,
            structure: None,
            eb: None,
            certificates: None,
            davenport: None,
            timings: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

/// Outcome of one lemma suite.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteSummary {
    pub name: String,
    pub instances: usize,
    pub passed: bool,
    pub failures: Vec<String>,
}

/// Summary emitted by `verify-lemmas`.
#[derive(Debug, Clone, Serialize)]
pub struct LemmaReport {
    pub schema_version: &'static str,
    pub corpus_size: usize,
    pub passed: bool,
    pub suites: Vec<SuiteSummary>,
}

impl LemmaReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}
