use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::config::{CampaignConfig, Suite};
use crate::HarnessError;

pub const SCHEMA_VERSION: u32 = 1;

/// Worst case of one named check across all trials of a campaign.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct CheckSummary {
    /// A check fails when its margin drops below `-tolerance`.
    pub tolerance: f64,
    pub count: usize,
    pub failures: usize,
    pub worst_margin: f64,
    pub worst_trial: usize,
    pub worst_seed: u64,
}

/// A failing trial, replayable from its seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct Witness {
    pub check: String,
    pub trial: usize,
    pub seed: u64,
    pub margin: f64,
    pub detail: serde_json::Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct CpRow {
    pub n: usize,
    pub p: jspec_core::ExtExponent,
    pub max_found: f64,
    pub closed_form: f64,
    pub abs_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct SuiteReport {
    pub schema_version: u32,
    pub suite: Suite,
    pub config: CampaignConfig,
    pub pass: bool,
    pub checks: BTreeMap<String, CheckSummary>,
    /// Measured quantities that are reported but not gated on.
    pub metrics: BTreeMap<String, f64>,
    pub witnesses: Vec<Witness>,
    pub table: Vec<CpRow>,
    /// Not covered by the checksum.
    pub wall_time_ms: f64,
    /// SHA-256 over the report with `wall_time_ms = 0` and an empty checksum.
    pub checksum: String,
}

impl SuiteReport {
    pub fn compute_checksum(&self) -> String {
        let mut body = self.clone();
        body.wall_time_ms = 0.0;
        body.checksum = String::new();
        let bytes = serde_json::to_vec(&body).expect("report serializes");
        hex::encode(Sha256::digest(&bytes))
    }

    pub fn seal(mut self) -> Self {
        self.checksum = self.compute_checksum();
        self
    }

    /// Equal up to wall time.
    pub fn same_results(&self, other: &SuiteReport) -> bool {
        let strip = |r: &SuiteReport| SuiteReport { wall_time_ms: 0.0, ..r.clone() };
        strip(self) == strip(other)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn write(&self, path: &Path) -> Result<(), HarnessError> {
        std::fs::write(path, self.to_json() + "\n")?;
        Ok(())
    }

    /// Parses and verifies schema version and checksum.
    pub fn from_json(s: &str) -> Result<Self, HarnessError> {
        let v: serde_json::Value = serde_json::from_str(s)?;
        let version = v.get("schema-version").and_then(|x| x.as_u64());
        if version != Some(SCHEMA_VERSION as u64) {
            return Err(HarnessError::Schema(format!(
                "expected schema version {SCHEMA_VERSION}, found {version:?}"
            )));
        }
        let report: SuiteReport = serde_json::from_value(v).map_err(|e| HarnessError::Schema(e.to_string()))?;
        let want = report.compute_checksum();
        if want != report.checksum {
            return Err(HarnessError::Checksum { recorded: report.checksum.clone(), computed: want });
        }
        Ok(report)
    }

    pub fn read(path: &Path) -> Result<Self, HarnessError> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// The C_p table as CSV.
    pub fn table_csv(&self) -> Result<String, HarnessError> {
        cp_rows_csv(&self.table)
    }
}

pub fn cp_rows_csv(rows: &[CpRow]) -> Result<String, HarnessError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["n", "p", "max_found", "closed_form", "abs_error"])?;
    for r in rows {
        w.write_record([
            r.n.to_string(),
            r.p.to_string(),
            format!("{:.12}", r.max_found),
            format!("{:.12}", r.closed_form),
            format!("{:.3e}", r.abs_error),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| HarnessError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
