//! Timed, memory-windowed Lyndon array pipelines.
//!
//! The BWT route drops the text once L exists, reuses the SA buffer as
//! lambda storage, and never materializes the decoded text, so its tracked
//! peak stays near text + two integer arrays + L. The NSV route overwrites
//! ISA with NSV and SA with lambda.

use std::time::Instant;

use lynarr::bwt;
use lynarr::lyndon::{self, LyndonArray, StackStats};
use lynarr::suffix;
use lynarr::text::Text;
use lynarr::Result;

use crate::mem;
use crate::report::{BenchReport, StepSeconds, SCHEMA};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algo {
    Bwt,
    Nsv,
    Oracle,
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::Bwt => "bwt",
            Algo::Nsv => "nsv",
            Algo::Oracle => "oracle",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SaAlgo {
    Sais,
    Naive,
}

fn build_sa_with(t: &Text, sa_algo: SaAlgo) -> suffix::SuffixArray {
    match sa_algo {
        SaAlgo::Sais => suffix::build_sa(t),
        SaAlgo::Naive => suffix::build_sa_naive(t),
    }
}

/// Runs one (load, construct) cell inside a fresh measurement window.
///
/// `load` executes inside the window so the text buffer counts toward the
/// reported peak, as does everything after it up to the finished lambda.
pub fn run_lyndon(
    dataset: &str,
    algo: Algo,
    sa_algo: SaAlgo,
    width_bits: u8,
    load: impl FnOnce() -> Result<Text>,
) -> Result<(LyndonArray, BenchReport)> {
    let baseline = mem::open_window();
    let text = load()?;
    let n = text.len();
    let sigma = text.sigma();

    let mut steps = StepSeconds::default();
    let mut stats = StackStats::default();

    let lam = match algo {
        Algo::Bwt => {
            let clock = Instant::now();
            let sa = build_sa_with(&text, sa_algo);
            steps.sa = clock.elapsed().as_secs_f64();

            let clock = Instant::now();
            let l = bwt::bwt_from_sa(&text, &sa);
            drop(text);
            steps.bwt_or_isa = clock.elapsed().as_secs_f64();

            let clock = Instant::now();
            let c = bwt::count_array(&l);
            let lf = bwt::lf_array(&l, &c);
            steps.lf_or_nsv = clock.elapsed().as_secs_f64();

            let clock = Instant::now();
            let (lam, s) = lyndon::bwt_lyndon_with_sa(&l, &lf, sa)?;
            steps.lambda = clock.elapsed().as_secs_f64();
            stats = s;
            lam
        }
        Algo::Nsv => {
            let clock = Instant::now();
            let sa = build_sa_with(&text, sa_algo);
            steps.sa = clock.elapsed().as_secs_f64();
            drop(text);

            let clock = Instant::now();
            let isa = suffix::invert_sa(&sa)?;
            steps.bwt_or_isa = clock.elapsed().as_secs_f64();

            let clock = Instant::now();
            let mut nsv = isa.into_values();
            suffix::nsv_inplace(&mut nsv);
            steps.lf_or_nsv = clock.elapsed().as_secs_f64();

            let clock = Instant::now();
            let mut lam = sa.into_values();
            suffix::lambda_from_nsv_into(&nsv, &mut lam);
            drop(nsv);
            steps.lambda = clock.elapsed().as_secs_f64();
            LyndonArray::from_values(lam)
        }
        Algo::Oracle => {
            let clock = Instant::now();
            let lam = lyndon::oracle_lyndon(&text);
            steps.lambda = clock.elapsed().as_secs_f64();
            lam
        }
    };

    let peak = mem::window_peak(baseline) as u64;
    let output_bytes = 4 * n as u64; // lambda is held as u32 in memory
    let report = BenchReport {
        schema: SCHEMA,
        dataset: dataset.to_string(),
        algo: algo.name().to_string(),
        n: n as u64,
        sigma,
        width: width_bits,
        steps,
        total_seconds: steps.total(),
        peak_bytes: peak,
        peak_bytes_per_symbol: peak as f64 / n as f64,
        working_bytes: peak.saturating_sub(n as u64 + output_bytes),
        stack_high_water_entries: stats.high_water as u64,
        stack_high_water_bytes: stats.high_water_bytes() as u64,
        stack_pushes: stats.pushes,
        stack_pops: stats.pops,
    };
    Ok((lam, report))
}
