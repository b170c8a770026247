use serde::{Deserialize, Serialize};

/// Version of the JSON report layouts and of the sweep CSV.
pub const REPORT_SCHEMA_VERSION: u32 = 1;

pub const SWEEP_CSV_HEADER: &str =
    "schema_version,family,n,k,eps,seed,size,lightness,worst_mult,worst_slack,bound,violations,runtime_ms";

/// One cell of a benchmark sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub family: String,
    pub n: usize,
    pub k: usize,
    pub eps: f64,
    pub seed: u64,
    pub size: usize,
    pub lightness: f64,
    pub worst_mult: f64,
    pub worst_slack: f64,
    pub bound: f64,
    pub violations: usize,
    pub runtime_ms: u128,
}

impl SweepRow {
    pub fn to_csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            REPORT_SCHEMA_VERSION,
            self.family,
            self.n,
            self.k,
            self.eps,
            self.seed,
            self.size,
            self.lightness,
            self.worst_mult,
            self.worst_slack,
            self.bound,
            self.violations,
            self.runtime_ms
        )
    }
}
