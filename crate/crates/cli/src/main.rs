//! `lynarr` command-line toolkit.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error, 3 internal
//! invariant violation.

mod bench;
mod mem;
mod pipeline;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use lynarr::bp::{self, StackMode};
use lynarr::bwt;
use lynarr::lyndon;
use lynarr::suffix;
use lynarr::text::{load_text, SentinelPolicy, Text};
use lynarr::{write_array, Error, IntArray, Width};

use pipeline::{run_lyndon, Algo, SaAlgo};

#[global_allocator]
static ALLOCATOR: mem::CountingAllocator = mem::CountingAllocator;

#[derive(Parser)]
#[command(
    name = "lynarr",
    version,
    about = "Lyndon array toolkit: BWT-based, NSV-based and definitional construction, \
             balanced-parenthesis encoding, and a benchmark harness"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    Bwt,
    Nsv,
    Oracle,
}

impl From<AlgoArg> for Algo {
    fn from(a: AlgoArg) -> Algo {
        match a {
            AlgoArg::Bwt => Algo::Bwt,
            AlgoArg::Nsv => Algo::Nsv,
            AlgoArg::Oracle => Algo::Oracle,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum WidthArg {
    #[value(name = "32")]
    W32,
    #[value(name = "64")]
    W64,
}

impl From<WidthArg> for Width {
    fn from(w: WidthArg) -> Width {
        match w {
            WidthArg::W32 => Width::W32,
            WidthArg::W64 => Width::W64,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SaArg {
    Sais,
    Naive,
}

impl From<SaArg> for SaAlgo {
    fn from(s: SaArg) -> SaAlgo {
        match s {
            SaArg::Sais => SaAlgo::Sais,
            SaArg::Naive => SaAlgo::Naive,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum StackModeArg {
    Pairs,
    Bitstack,
}

impl From<StackModeArg> for StackMode {
    fn from(m: StackModeArg) -> StackMode {
        match m {
            StackModeArg::Pairs => StackMode::Pairs,
            StackModeArg::Bitstack => StackMode::BitStack,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SentinelArg {
    Append,
    Verify,
}

impl From<SentinelArg> for SentinelPolicy {
    fn from(p: SentinelArg) -> SentinelPolicy {
        match p {
            SentinelArg::Append => SentinelPolicy::Append,
            SentinelArg::Verify => SentinelPolicy::Verify,
        }
    }
}

#[derive(Args)]
struct IngestOpts {
    /// Sentinel handling for the input file
    #[arg(long, value_enum, default_value = "append")]
    sentinel: SentinelArg,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute the Lyndon array of a text and write it as a binary array
    Lyndon {
        input: PathBuf,
        /// Construction route
        #[arg(long, value_enum, default_value = "bwt")]
        algo: AlgoArg,
        /// Storage width of the output array
        #[arg(long, value_enum, default_value = "32")]
        width: WidthArg,
        /// Output path (default: INPUT.lam)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print a bench report as one JSON object on stdout
        #[arg(long)]
        report: bool,
        /// Suffix sorting algorithm (naive is the test oracle)
        #[arg(long, value_enum, default_value = "sais")]
        sa: SaArg,
        #[command(flatten)]
        ingest: IngestOpts,
    },
    /// Burrows-Wheeler transform a text (sentinel byte 0 kept inside L)
    Bwt {
        input: PathBuf,
        /// Output path (default: INPUT.bwt)
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "sais")]
        sa: SaArg,
        #[command(flatten)]
        ingest: IngestOpts,
    },
    /// Invert a BWT file back to the sentinel-terminated text
    Unbwt {
        input: PathBuf,
        /// Output path (default: INPUT.txt)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Balanced-parenthesis representation of the Lyndon array
    Bp {
        #[command(subcommand)]
        action: BpCmd,
    },
    /// Run benchmark cells over a corpus directory
    Bench {
        /// Directory of raw text files
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Comma-separated prefix sizes (e.g. 64KiB,1MiB,2MiB)
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<String>,
        /// Routes to run
        #[arg(long, value_enum, value_delimiter = ',', default_values = ["bwt", "nsv"])]
        algos: Vec<AlgoArg>,
        /// Repetitions per cell; the median run is reported
        #[arg(long, default_value_t = 3)]
        reps: usize,
        /// Skip the quadratic demonstration on unary inputs
        #[arg(long)]
        skip_quadratic: bool,
        /// Largest unary size (power of two) for the quadratic series
        #[arg(long, default_value_t = 16)]
        quadratic_max_log2: u32,
    },
    /// Write the tiny synthetic corpus (unary, Fibonacci, random per sigma)
    GenCorpus {
        #[arg(long)]
        dir: PathBuf,
        /// Bytes per file
        #[arg(long, default_value = "2MiB")]
        size: String,
    },
    /// Print corpus download URLs and verify sizes of present files
    FetchCorpus {
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum BpCmd {
    /// Build the 2n-bit representation from a text and write it
    Build {
        input: PathBuf,
        /// Output path (default: INPUT.bp)
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "pairs")]
        stack_mode: StackModeArg,
        #[command(flatten)]
        ingest: IngestOpts,
    },
    /// Print lambda[i] recovered from a BP file
    At {
        bp_file: PathBuf,
        /// 1-based position
        #[arg(long)]
        at: usize,
        /// Range-min-max block size in bits (multiple of 64)
        #[arg(long, default_value_t = bp::DEFAULT_BLOCK_BITS, value_parser = parse_block_bits)]
        block_size: usize,
    },
    /// Print the parenthesis string of a BP file
    Dump { bp_file: PathBuf },
    /// Rebuild from a text with both stacks and check every access
    Verify {
        input: PathBuf,
        #[arg(long, default_value_t = bp::DEFAULT_BLOCK_BITS, value_parser = parse_block_bits)]
        block_size: usize,
        #[command(flatten)]
        ingest: IngestOpts,
    },
}

fn parse_block_bits(s: &str) -> Result<usize, String> {
    let v: usize = s.parse().map_err(|e| format!("{e}"))?;
    if v == 0 || !v.is_multiple_of(64) {
        return Err("block size must be a positive multiple of 64".into());
    }
    Ok(v)
}

fn parse_size(s: &str) -> Result<usize, String> {
    let t = s.trim();
    let (num, mult) = if let Some(p) = t.strip_suffix("GiB") {
        (p, 1usize << 30)
    } else if let Some(p) = t.strip_suffix("MiB") {
        (p, 1 << 20)
    } else if let Some(p) = t.strip_suffix("KiB") {
        (p, 1 << 10)
    } else {
        (t, 1)
    };
    num.trim()
        .parse::<usize>()
        .map(|v| v * mult)
        .map_err(|e| format!("bad size {s:?}: {e}"))
}

fn default_out(input: &Path, ext: &str) -> PathBuf {
    let mut os = input.as_os_str().to_owned();
    os.push(ext);
    PathBuf::from(os)
}

fn run(cli: Cli) -> lynarr::Result<()> {
    match cli.cmd {
        Cmd::Lyndon {
            input,
            algo,
            width,
            out,
            report,
            sa,
            ingest,
        } => {
            let out = out.unwrap_or_else(|| default_out(&input, ".lam"));
            let policy = ingest.sentinel.into();
            let dataset = input.display().to_string();
            let (lam, bench) = run_lyndon(
                &dataset,
                algo.into(),
                sa.into(),
                {
                    let w: Width = width.into();
                    w.bits()
                },
                || load_text(&input, policy),
            )?;
            let arr = IntArray::from_u32_at(lam.into_values(), width.into());
            write_array(&out, &arr)?;
            if report {
                println!("{}", bench.to_json_line());
            }
        }
        Cmd::Bwt {
            input,
            out,
            sa,
            ingest,
        } => {
            let out = out.unwrap_or_else(|| default_out(&input, ".bwt"));
            let t = load_text(&input, ingest.sentinel.into())?;
            let sa = match SaAlgo::from(sa) {
                SaAlgo::Sais => suffix::build_sa(&t),
                SaAlgo::Naive => suffix::build_sa_naive(&t),
            };
            let l = bwt::bwt_from_sa(&t, &sa);
            std::fs::write(&out, l.bytes())?;
        }
        Cmd::Unbwt { input, out } => {
            let out = out.unwrap_or_else(|| default_out(&input, ".txt"));
            let l = bwt::BwtString::from_bytes(std::fs::read(&input)?)?;
            let c = bwt::count_array(&l);
            let lf = bwt::lf_array(&l, &c);
            let t = bwt::invert_bwt(&l, &lf)?;
            std::fs::write(&out, t.bytes())?;
        }
        Cmd::Bp { action } => run_bp(action)?,
        Cmd::Bench {
            corpus,
            sizes,
            algos,
            reps,
            skip_quadratic,
            quadratic_max_log2,
        } => {
            let sizes = sizes
                .iter()
                .map(|s| parse_size(s).map_err(Error::Internal))
                .collect::<lynarr::Result<Vec<_>>>()?;
            let quadratic_sizes = if skip_quadratic {
                vec![]
            } else {
                (12..=quadratic_max_log2.min(16))
                    .step_by(2)
                    .map(|p| 1usize << p)
                    .collect()
            };
            bench::cmd_bench(&bench::BenchOpts {
                corpus,
                sizes,
                algos: algos.into_iter().map(Algo::from).collect(),
                reps,
                quadratic_sizes,
            })?;
        }
        Cmd::GenCorpus { dir, size } => {
            let size = parse_size(&size).map_err(Error::Internal)?;
            bench::cmd_gen_corpus(&dir, size)?;
        }
        Cmd::FetchCorpus { dir } => {
            bench::cmd_fetch_corpus(dir.as_deref())?;
        }
    }
    Ok(())
}

fn run_bp(action: BpCmd) -> lynarr::Result<()> {
    match action {
        BpCmd::Build {
            input,
            out,
            stack_mode,
            ingest,
        } => {
            let out = out.unwrap_or_else(|| default_out(&input, ".bp"));
            let t = load_text(&input, ingest.sentinel.into())?;
            let sa = suffix::build_sa(&t);
            let l = bwt::bwt_from_sa(&t, &sa);
            let rep = bp::bp_from_bwt(&l, stack_mode.into())?;
            bp::write_bp(&out, &rep)?;
        }
        BpCmd::At {
            bp_file,
            at,
            block_size,
        } => {
            let rep = bp::read_bp(&bp_file)?;
            let idx = bp::build_bp_index_with_block(rep, block_size)?;
            println!("{}", idx.lambda_at(at)?);
        }
        BpCmd::Dump { bp_file } => {
            println!("{}", bp::read_bp(&bp_file)?.to_paren_string());
        }
        BpCmd::Verify {
            input,
            block_size,
            ingest,
        } => {
            let t = load_text(&input, ingest.sentinel.into())?;
            let overhead = verify_bp(&t, block_size)?;
            println!(
                "OK (n={}, bits={}, index overhead {} words at B={})",
                t.len(),
                2 * t.len(),
                overhead,
                block_size
            );
        }
    }
    Ok(())
}

/// Full BP verification: both stacks agree bit for bit, the sequence is
/// balanced with n opens, and the full access sweep matches the Lyndon array from
/// the inversion route. Returns the measured index overhead in words.
fn verify_bp(t: &Text, block_size: usize) -> lynarr::Result<usize> {
    let sa = suffix::build_sa(t);
    let l = bwt::bwt_from_sa(t, &sa);
    let pairs = bp::bp_from_bwt(&l, StackMode::Pairs)?;
    let bits = bp::bp_from_bwt(&l, StackMode::BitStack)?;
    if pairs != bits {
        return Err(Error::Internal(
            "stack modes produced different bit sequences".into(),
        ));
    }
    let c = bwt::count_array(&l);
    let lf = bwt::lf_array(&l, &c);
    let (_, lam) = lyndon::bwt_lyndon(&l, &lf)?;
    let idx = bp::build_bp_index_with_block(pairs, block_size)?;
    for i in 1..=idx.n() {
        let got = idx.lambda_at(i)?;
        if got != lam.at(i) {
            return Err(Error::Internal(format!(
                "lambda_at({i}) = {got} but the inversion route says {}",
                lam.at(i)
            )));
        }
    }
    Ok(idx.overhead_words())
}

fn main() -> ExitCode {
    // die quietly when a pipe reader (head, less) closes early
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::Internal(_) => 3,
                _ => 2,
            };
            ExitCode::from(code)
        }
    }
}
