//! Benchmark harness: per-(dataset, algo, size) cells over a corpus
//! directory, a prefix scaling series, and the quadratic blowup
//! demonstration of the definitional route on unary inputs.

use std::fs::File;
use std::io::Read;
use std::path::{Path, PathBuf};

use lynarr::text::Text;
use lynarr::{Error, Result};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::pipeline::{run_lyndon, Algo, SaAlgo};
use crate::report::BenchReport;

pub struct BenchOpts {
    pub corpus: Option<PathBuf>,
    /// prefix sizes in bytes; empty means "whole file"
    pub sizes: Vec<usize>,
    pub algos: Vec<Algo>,
    pub reps: usize,
    /// unary power-of-two sizes for the quadratic demonstration
    pub quadratic_sizes: Vec<usize>,
}

/// Reads the first `limit` bytes of a file (whole file if `None`) and
/// appends the sentinel.
fn load_prefix(path: &Path, limit: Option<usize>) -> Result<Text> {
    let mut file = File::open(path)?;
    let file_len = file.metadata()?.len() as usize;
    let take = limit.map_or(file_len, |s| s.min(file_len));
    let mut data = vec![0u8; take + 1];
    file.read_exact(&mut data[..take])?;
    if let Some(off) = data[..take].iter().position(|&b| b == 0) {
        return Err(Error::SentinelConflict { offset: off });
    }
    Text::from_terminated(data)
}

fn median_by_total(mut runs: Vec<BenchReport>) -> BenchReport {
    runs.sort_by(|a, b| a.total_seconds.total_cmp(&b.total_seconds));
    let mid = runs.len() / 2;
    runs.swap_remove(mid)
}

/// One measured cell: the median-by-total of `reps` runs.
pub fn bench_cell(
    dataset: &str,
    algo: Algo,
    reps: usize,
    load: impl Fn() -> Result<Text>,
) -> Result<BenchReport> {
    let mut runs = Vec::with_capacity(reps.max(1));
    for _ in 0..reps.max(1) {
        let (_lam, report) = run_lyndon(dataset, algo, SaAlgo::Sais, 32, &load)?;
        runs.push(report);
    }
    Ok(median_by_total(runs))
}

/// Emits one JSON line per cell on stdout. Per-dataset failures are
/// reported on stderr and skipped.
pub fn cmd_bench(opts: &BenchOpts) -> Result<()> {
    if let Some(dir) = &opts.corpus {
        let mut files: Vec<PathBuf> = std::fs::read_dir(dir)?
            .filter_map(|e| e.ok())
            .map(|e| e.path())
            .filter(|p| p.is_file())
            .collect();
        files.sort();
        for file in &files {
            let name = file
                .file_name()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| file.display().to_string());
            let sizes: Vec<Option<usize>> = if opts.sizes.is_empty() {
                vec![None]
            } else {
                opts.sizes.iter().map(|&s| Some(s)).collect()
            };
            for limit in sizes {
                for &algo in &opts.algos {
                    let dataset = match limit {
                        Some(s) => format!("{name}:{s}"),
                        None => name.clone(),
                    };
                    match bench_cell(&dataset, algo, opts.reps, || load_prefix(file, limit)) {
                        Ok(report) => println!("{}", report.to_json_line()),
                        Err(e) => eprintln!("skipping {dataset} ({}): {e}", algo.name()),
                    }
                }
            }
        }
    }

    for &size in &opts.quadratic_sizes {
        let dataset = format!("unary:{size}");
        match bench_cell(&dataset, Algo::Oracle, opts.reps, || {
            Text::from_bytes(&vec![b'a'; size])
        }) {
            Ok(report) => println!("{}", report.to_json_line()),
            Err(e) => eprintln!("skipping {dataset}: {e}"),
        }
    }
    Ok(())
}

/// Writes the tiny synthetic corpus: unary, a Fibonacci word, and random
/// texts per alphabet size. Deterministic (fixed seed).
pub fn cmd_gen_corpus(dir: &Path, size: usize) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join("unary.txt"), vec![b'a'; size])?;

    let mut a = b"a".to_vec();
    let mut b = b"ab".to_vec();
    while b.len() < size {
        let next = [b.as_slice(), a.as_slice()].concat();
        a = std::mem::replace(&mut b, next);
    }
    b.truncate(size);
    std::fs::write(dir.join("fibonacci.txt"), &b)?;

    let mut rng = ChaCha8Rng::seed_from_u64(0x1f_2e_3d_4c);
    for sigma in [2u8, 4, 26, 255] {
        let data: Vec<u8> = (0..size).map(|_| rng.gen_range(1..=sigma)).collect();
        std::fs::write(dir.join(format!("random-s{sigma}.txt")), &data)?;
    }
    println!("wrote 6 files of {size} bytes to {}", dir.display());
    Ok(())
}

/// The Pizza & Chili datasets used by the harness upstream: names, download
/// URLs, and expected uncompressed sizes (MiB).
const CORPUS: &[(&str, &str, u64)] = &[
    (
        "sources",
        "https://pizzachili.dcc.uchile.cl/texts/code/sources.gz",
        201,
    ),
    (
        "dblp",
        "https://pizzachili.dcc.uchile.cl/texts/xml/dblp.xml.gz",
        282,
    ),
    (
        "dna",
        "https://pizzachili.dcc.uchile.cl/texts/dna/dna.gz",
        385,
    ),
    (
        "english.1gb",
        "https://pizzachili.dcc.uchile.cl/texts/nlang/english.1024MB.gz",
        1024,
    ),
    (
        "proteins",
        "https://pizzachili.dcc.uchile.cl/texts/protein/proteins.gz",
        1129,
    ),
    (
        "einstein-de",
        "https://pizzachili.dcc.uchile.cl/repcorpus/real/einstein.de.txt.gz",
        88,
    ),
    (
        "kernel",
        "https://pizzachili.dcc.uchile.cl/repcorpus/real/kernel.gz",
        246,
    ),
    (
        "fib41",
        "https://pizzachili.dcc.uchile.cl/repcorpus/pseudo-real/fib41.gz",
        256,
    ),
    (
        "cere",
        "https://pizzachili.dcc.uchile.cl/repcorpus/real/cere.gz",
        440,
    ),
];

/// Prints the corpus URLs; verifies sizes of any files already present.
pub fn cmd_fetch_corpus(dir: Option<&Path>) -> Result<()> {
    println!("# dataset            expected-MiB  url");
    for (name, url, mib) in CORPUS {
        println!("{name:<20} {mib:>12}  {url}");
    }
    if let Some(dir) = dir {
        println!();
        for (name, _, mib) in CORPUS {
            let path = dir.join(name);
            match std::fs::metadata(&path) {
                Ok(meta) => {
                    let got_mib = meta.len() / (1 << 20);
                    let status = if got_mib.abs_diff(*mib) <= 1 {
                        "OK"
                    } else {
                        "SIZE MISMATCH"
                    };
                    println!("{name:<20} {got_mib:>9} MiB  {status}");
                }
                Err(_) => println!("{name:<20} {:>13}", "missing"),
            }
        }
    }
    Ok(())
}
