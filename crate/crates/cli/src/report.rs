//! Benchmark report emitted as one JSON object per line.

use serde::Serialize;

pub const SCHEMA: &str = "bench-v1";

/// Wall-clock seconds per pipeline step, mirroring the four-step layout
/// of the harness: suffix sorting, BWT or ISA, LF or NSV, then lambda.
#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct StepSeconds {
    pub sa: f64,
    pub bwt_or_isa: f64,
    pub lf_or_nsv: f64,
    pub lambda: f64,
}

impl StepSeconds {
    pub fn total(&self) -> f64 {
        self.sa + self.bwt_or_isa + self.lf_or_nsv + self.lambda
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchReport {
    pub schema: &'static str,
    pub dataset: String,
    pub algo: String,
    pub n: u64,
    pub sigma: u16,
    pub width: u8,
    pub steps: StepSeconds,
    pub total_seconds: f64,
    /// tracked peak of the measurement window, bytes
    pub peak_bytes: u64,
    pub peak_bytes_per_symbol: f64,
    /// peak minus the text (n bytes) and the in-memory output array (4n)
    pub working_bytes: u64,
    pub stack_high_water_entries: u64,
    pub stack_high_water_bytes: u64,
    pub stack_pushes: u64,
    pub stack_pops: u64,
}

impl BenchReport {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}
