//! End-to-end checks of the command-line surface: flags, file formats,
//! exit codes, and report schema.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> PathBuf {
    PathBuf::from(env!("CARGO_BIN_EXE_lynarr"))
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().unwrap()
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(bin())
        .current_dir(dir)
        .args(args)
        .output()
        .unwrap()
}

fn write(dir: &Path, name: &str, contents: &[u8]) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn lyndon_routes_write_identical_arrays() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "banana.txt", b"banana");

    for (algo, out_name) in [("bwt", "a.lam"), ("nsv", "b.lam"), ("oracle", "c.lam")] {
        let out = run_in(
            dir.path(),
            &["lyndon", "banana.txt", "--algo", algo, "--out", out_name],
        );
        assert_eq!(
            code(&out),
            0,
            "{algo}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    let a = std::fs::read(dir.path().join("a.lam")).unwrap();
    assert_eq!(a, std::fs::read(dir.path().join("b.lam")).unwrap());
    assert_eq!(a, std::fs::read(dir.path().join("c.lam")).unwrap());

    // header + the Lyndon array of banana$
    assert_eq!(&a[0..8], b"LYNARR01");
    assert_eq!(a[8], 32);
    assert_eq!(u64::from_le_bytes(a[16..24].try_into().unwrap()), 7);
    let values: Vec<u32> = a[24..]
        .chunks_exact(4)
        .map(|c| u32::from_le_bytes(c.try_into().unwrap()))
        .collect();
    assert_eq!(values, vec![1, 2, 1, 2, 1, 1, 1]);
}

#[test]
fn lyndon_width_64() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "t.txt", b"banana");
    let out = run_in(
        dir.path(),
        &["lyndon", "t.txt", "--width", "64", "--out", "t.lam"],
    );
    assert_eq!(code(&out), 0);
    let raw = std::fs::read(dir.path().join("t.lam")).unwrap();
    assert_eq!(raw[8], 64);
    assert_eq!(raw.len(), 24 + 7 * 8);
    let first = u64::from_le_bytes(raw[24..32].try_into().unwrap());
    assert_eq!(first, 1);
}

#[test]
fn oracle_matches_nsv_on_unary_4096() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "unary.txt", &vec![b'a'; 4096]);
    run_in(
        dir.path(),
        &["lyndon", "unary.txt", "--algo", "oracle", "--out", "o.lam"],
    );
    run_in(
        dir.path(),
        &["lyndon", "unary.txt", "--algo", "nsv", "--out", "n.lam"],
    );
    let o = std::fs::read(dir.path().join("o.lam")).unwrap();
    assert_eq!(o, std::fs::read(dir.path().join("n.lam")).unwrap());
    // all-ones array
    assert!(o[24..].chunks_exact(4).all(|c| c == [1, 0, 0, 0]));
}

#[test]
fn bwt_and_unbwt_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "banana.txt", b"banana");
    let out = run_in(dir.path(), &["bwt", "banana.txt"]);
    assert_eq!(code(&out), 0);
    let l = std::fs::read(dir.path().join("banana.txt.bwt")).unwrap();
    assert_eq!(l, b"annb\x00aa");

    let out = run_in(
        dir.path(),
        &["unbwt", "banana.txt.bwt", "--out", "back.txt"],
    );
    assert_eq!(code(&out), 0);
    let back = std::fs::read(dir.path().join("back.txt")).unwrap();
    assert_eq!(back, b"banana\x00");
}

#[test]
fn unbwt_large_random_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    // 1 MiB of pseudo-random nonzero bytes
    let mut state = 0xB5297A4D3F84D5B5u64;
    let data: Vec<u8> = (0..1 << 20)
        .map(|_| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 255) as u8 + 1
        })
        .collect();
    write(dir.path(), "rand.bin", &data);
    assert_eq!(code(&run_in(dir.path(), &["bwt", "rand.bin"])), 0);
    assert_eq!(
        code(&run_in(
            dir.path(),
            &["unbwt", "rand.bin.bwt", "--out", "back.bin"]
        )),
        0
    );
    let back = std::fs::read(dir.path().join("back.bin")).unwrap();
    assert_eq!(&back[..back.len() - 1], &data[..]);
    assert_eq!(*back.last().unwrap(), 0);
}

#[test]
fn bp_subcommands() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "banana.txt", b"banana");

    assert_eq!(code(&run_in(dir.path(), &["bp", "build", "banana.txt"])), 0);
    let bp_raw = std::fs::read(dir.path().join("banana.txt.bp")).unwrap();
    assert_eq!(&bp_raw[0..8], b"LYNBP001");
    assert_eq!(u64::from_le_bytes(bp_raw[8..16].try_into().unwrap()), 7);

    let dump = run_in(dir.path(), &["bp", "dump", "banana.txt.bp"]);
    assert_eq!(
        String::from_utf8_lossy(&dump.stdout).trim(),
        "()(())(())()()"
    );

    let at = run_in(dir.path(), &["bp", "at", "banana.txt.bp", "--at", "4"]);
    assert_eq!(code(&at), 0);
    assert_eq!(String::from_utf8_lossy(&at.stdout).trim(), "2");

    // out of range position is a data error
    let at = run_in(dir.path(), &["bp", "at", "banana.txt.bp", "--at", "9"]);
    assert_eq!(code(&at), 2);

    let verify = run_in(dir.path(), &["bp", "verify", "banana.txt"]);
    assert_eq!(code(&verify), 0);
    assert!(String::from_utf8_lossy(&verify.stdout).starts_with("OK"));

    // both stack modes build identical files
    assert_eq!(
        code(&run_in(
            dir.path(),
            &[
                "bp",
                "build",
                "banana.txt",
                "--stack-mode",
                "bitstack",
                "--out",
                "b2.bp"
            ]
        )),
        0
    );
    assert_eq!(bp_raw, std::fs::read(dir.path().join("b2.bp")).unwrap());
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();

    // usage: unknown flag / missing args
    assert_eq!(code(&run(&["lyndon"])), 1);
    assert_eq!(code(&run(&["--bogus"])), 1);
    // help and version succeed
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["--version"])), 0);
    // block size validation is a usage error
    let t = write(dir.path(), "x.txt", b"ab");
    let out = run(&["bp", "verify", t.to_str().unwrap(), "--block-size", "100"]);
    assert_eq!(code(&out), 1);

    // data errors: missing file, sentinel conflict, malformed bwt
    assert_eq!(code(&run(&["lyndon", "/definitely/not/here"])), 2);
    let bad = write(dir.path(), "bad.txt", b"a\x00b");
    assert_eq!(code(&run(&["lyndon", bad.to_str().unwrap()])), 2);
    let not_bwt = write(dir.path(), "not.bwt", b"abc"); // no sentinel
    assert_eq!(code(&run(&["unbwt", not_bwt.to_str().unwrap()])), 2);

    // verify policy accepts only terminated input
    let ok = write(dir.path(), "term.txt", b"ab\x00");
    assert_eq!(
        code(&run(&[
            "lyndon",
            ok.to_str().unwrap(),
            "--sentinel",
            "verify",
            "--out",
            dir.path().join("term.lam").to_str().unwrap()
        ])),
        0
    );
    let unterm = write(dir.path(), "unterm.txt", b"ab");
    assert_eq!(
        code(&run(&[
            "lyndon",
            unterm.to_str().unwrap(),
            "--sentinel",
            "verify"
        ])),
        2
    );
}

#[test]
fn report_schema_fields() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "t.txt", b"mississippi");
    let out = run_in(
        dir.path(),
        &["lyndon", "t.txt", "--report", "--out", "t.lam"],
    );
    assert_eq!(code(&out), 0);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["schema"], "bench-v1");
    assert_eq!(report["algo"], "bwt");
    assert_eq!(report["n"], 12);
    assert_eq!(report["width"], 32);
    for key in [
        "sigma",
        "peak_bytes",
        "peak_bytes_per_symbol",
        "working_bytes",
        "stack_high_water_entries",
        "stack_high_water_bytes",
        "stack_pushes",
        "stack_pops",
        "total_seconds",
    ] {
        assert!(report.get(key).is_some(), "missing {key}");
    }
    for step in ["sa", "bwt_or_isa", "lf_or_nsv", "lambda"] {
        assert!(report["steps"].get(step).is_some(), "missing step {step}");
    }
    assert_eq!(
        report["stack_pushes"].as_u64().unwrap(),
        11 // n - 1
    );
}

#[test]
fn bench_emits_json_lines_and_skips_bad_datasets() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("corpus");
    std::fs::create_dir(&corpus).unwrap();
    std::fs::write(corpus.join("tiny.txt"), b"abracadabra").unwrap();
    std::fs::write(corpus.join("zeros.bin"), b"a\x00b").unwrap(); // skipped

    let out = run(&[
        "bench",
        "--corpus",
        corpus.to_str().unwrap(),
        "--algos",
        "bwt,nsv,oracle",
        "--reps",
        "1",
        "--quadratic-max-log2",
        "12",
    ]);
    assert_eq!(code(&out), 0);
    let stdout = String::from_utf8_lossy(&out.stdout);
    let reports: Vec<serde_json::Value> = stdout
        .lines()
        .map(|l| serde_json::from_str(l).expect("each line is a JSON report"))
        .collect();
    // 3 algos on tiny.txt + 1 quadratic cell; zeros.bin skipped on stderr
    assert_eq!(reports.len(), 4);
    assert!(String::from_utf8_lossy(&out.stderr).contains("zeros.bin"));
    assert!(reports.iter().any(|r| r["dataset"] == "unary:4096"));
}

#[test]
fn gen_and_fetch_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("synth");
    let out = run(&[
        "gen-corpus",
        "--dir",
        corpus.to_str().unwrap(),
        "--size",
        "4KiB",
    ]);
    assert_eq!(code(&out), 0);
    let names: Vec<String> = std::fs::read_dir(&corpus)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    assert_eq!(names.len(), 6);
    for name in &names {
        let meta = std::fs::metadata(corpus.join(name)).unwrap();
        assert_eq!(meta.len(), 4096, "{name}");
    }
    // deterministic: regenerating produces identical bytes
    let before = std::fs::read(corpus.join("random-s26.txt")).unwrap();
    run(&[
        "gen-corpus",
        "--dir",
        corpus.to_str().unwrap(),
        "--size",
        "4KiB",
    ]);
    assert_eq!(
        before,
        std::fs::read(corpus.join("random-s26.txt")).unwrap()
    );

    let out = run(&["fetch-corpus"]);
    assert_eq!(code(&out), 0);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("pizzachili"));
    assert!(stdout.contains("sources"));
}
