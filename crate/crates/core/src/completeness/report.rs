use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::field::FieldElement;
use crate::geometry::{Geometry, PointCode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Fast,
    Naive,
    Oracle,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Fast => "fast",
            Algorithm::Naive => "naive",
            Algorithm::Oracle => "oracle",
        })
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fast" => Ok(Algorithm::Fast),
            "naive" => Ok(Algorithm::Naive),
            "oracle" => Ok(Algorithm::Oracle),
            _ => Err(format!("unknown algorithm {s:?}")),
        }
    }
}

/// Outcome of a completeness check. `uncovered` holds normalized codes in
/// increasing order and is empty exactly when the cap is complete.
#[derive(Debug, Clone, PartialEq)]
pub struct CompletenessReport {
    pub complete: bool,
    pub n: usize,
    pub geometry: String,
    pub algorithm: Algorithm,
    pub shards: usize,
    pub uncovered: Vec<PointCode>,
    pub pairs_processed: u64,
    pub marks_issued: u64,
    pub elapsed_ms: f64,
    pub peak_coverage_bytes: usize,
}

/// Serialized form of a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportJson {
    pub complete: bool,
    pub n: usize,
    pub geometry: String,
    pub algorithm: Algorithm,
    pub shards: usize,
    pub uncovered_count: usize,
    pub uncovered_sample: Vec<Vec<FieldElement>>,
    pub pairs_processed: u64,
    pub marks_issued: u64,
    pub elapsed_ms: f64,
    pub peak_coverage_bytes: usize,
}

pub const DEFAULT_SAMPLE: usize = 10;

impl CompletenessReport {
    pub fn to_json(&self, g: &Geometry, sample: Option<usize>) -> ReportJson {
        let take = sample.unwrap_or(usize::MAX);
        ReportJson {
            complete: self.complete,
            n: self.n,
            geometry: self.geometry.clone(),
            algorithm: self.algorithm,
            shards: self.shards,
            uncovered_count: self.uncovered.len(),
            uncovered_sample: self.uncovered.iter().take(take).map(|&p| g.coords(p)).collect(),
            pairs_processed: self.pairs_processed,
            marks_issued: self.marks_issued,
            elapsed_ms: self.elapsed_ms,
            peak_coverage_bytes: self.peak_coverage_bytes,
        }
    }

    /// Copy with the execution-dependent fields cleared: timing, coverage
    /// memory, shard count and mark count all vary with how the work was
    /// split, the verdict does not.
    pub fn masked(&self) -> Self {
        CompletenessReport {
            shards: 0,
            marks_issued: 0,
            elapsed_ms: 0.0,
            peak_coverage_bytes: 0,
            ..self.clone()
        }
    }
}
