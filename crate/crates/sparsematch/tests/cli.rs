use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str], stdin: &[u8]) -> Output {
    run_env(args, stdin, &[])
}

fn run_env(args: &[&str], stdin: &[u8], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_sparsematch"));
    cmd.args(args)
        .env_remove("SPARSEMATCH_SEED")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().unwrap();
    // The binary may exit before reading stdin (usage errors).
    if let Err(e) = child.stdin.take().unwrap().write_all(stdin) {
        assert_eq!(e.kind(), std::io::ErrorKind::BrokenPipe);
    }
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn find_prints_offsets_and_exits_zero() {
    let o = run(&["find", "--pattern", "cabab"], b"cababcabab");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0\n5\n");
}

#[test]
fn find_without_match_exits_one() {
    let o = run(&["find", "--pattern", "zz"], b"aaaa");
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "");
}

#[test]
fn find_reads_file_argument() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(b"xxabxxab").unwrap();
    let o = run(&["find", "--pattern-hex", "6162", f.path().to_str().unwrap()], b"");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "2\n6\n");
}

#[test]
fn errors_exit_two() {
    let missing = run(&["find", "--pattern", "a", "/nonexistent/input"], b"");
    assert_eq!(missing.status.code(), Some(2));
    assert!(stderr(&missing).contains("cannot open"));

    let both = run(&["find", "--pattern", "a", "--pattern-hex", "61"], b"a");
    assert_eq!(both.status.code(), Some(2));

    let neither = run(&["find"], b"a");
    assert_eq!(neither.status.code(), Some(2));

    let unknown = run(&["find", "--pattern", "a", "--bogus"], b"a");
    assert_eq!(unknown.status.code(), Some(2));

    let bad_hex = run(&["find", "--pattern-hex", "6"], b"a");
    assert_eq!(bad_hex.status.code(), Some(2));

    let empty = run(&["find", "--pattern", ""], b"a");
    assert_eq!(empty.status.code(), Some(2));
}

#[test]
fn help_goes_to_stdout() {
    let o = run(&["--help"], b"");
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("find"));
}

#[test]
fn input_size_guard() {
    let o = run(&["find", "--pattern", "a", "--max-input-bytes", "4"], b"aaaaa");
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("max-input-bytes"));
    let ok = run(&["find", "--pattern", "a", "--max-input-bytes", "5"], b"aaaaa");
    assert_eq!(ok.status.code(), Some(0));
}

#[test]
fn counters_json_on_stderr() {
    let o = run(&["find", "--pattern", "cabab", "--counters"], b"cababcabab");
    let v: Value = serde_json::from_str(stderr(&o).trim()).unwrap();
    assert_eq!(v["events"]["type3"], 2);
    assert_eq!(v["verifications"], 2);
    assert_eq!(v["total_shift"], 5);
}

#[test]
fn all_algorithms_agree_on_stdout() {
    let mut x = 1u32;
    let text: Vec<u8> = (0..5000)
        .map(|_| {
            x = x.wrapping_mul(1_103_515_245).wrapping_add(12_345);
            b"abc"[(x >> 16) as usize % 3]
        })
        .collect();
    let reference = stdout(&run(&["find", "--pattern", "abca", "--algo", "naive"], &text));
    assert!(!reference.is_empty());
    for algo in ["a", "b", "horspool"] {
        assert_eq!(stdout(&run(&["find", "--pattern", "abca", "--algo", algo], &text)), reference, "{algo}");
    }
}

#[test]
fn seed_from_environment() {
    let args = ["find", "--pattern", "ab", "--algo", "b", "--counters"];
    let a = run_env(&args, b"abababab", &[("SPARSEMATCH_SEED", "7")]);
    let b = run(&["find", "--pattern", "ab", "--algo", "b", "--counters", "--seed", "7"], b"abababab");
    assert_eq!(stdout(&a), "0\n2\n4\n6\n");
    assert_eq!(stderr(&a), stderr(&b));
    let bad = run_env(&args, b"ab", &[("SPARSEMATCH_SEED", "x")]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn paper_policy_warns() {
    let o = run(&["find", "--pattern", "cabab", "--policy", "paper"], b"cababcabab");
    assert_eq!(stdout(&o), "0\n");
    assert!(stderr(&o).contains("may miss occurrences"));
}

#[test]
fn stats_reports_anchor() {
    let o = run(&["stats", "--pattern", "cabab"], b"");
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["indexing"], "0-based");
    assert_eq!(v["n"], 5);
    assert_eq!(v["delta"], 3);
    assert_eq!(v["sparse"]["length"], 3);
    assert_eq!(v["sparse"]["startpos"], 2);
    assert_eq!(v["sparse"]["endpos"], 4);
    assert_eq!(v["sparse"]["substring_hex"], "626162");
    assert_eq!(v["shift_paper"]["t3"], 3);
}

#[test]
fn bench_prints_tables() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(
        f,
        "alphabet_sizes = [4]\npattern_lengths = [8]\ntext_length = 2000\ntrials = 2\nseed = 1\nexperiments = [\"sparse-length\", \"read-cost\"]"
    )
    .unwrap();
    let o = run(&["bench", "--config", f.path().to_str().unwrap()], b"");
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("# sparse-length"));
    assert!(out.contains("# read-cost"));
    assert!(!out.contains("# verify-cost"));

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    writeln!(bad, "alphabet_sizes = [300]\npattern_lengths = [8]\ntext_length = 10\ntrials = 1\nseed = 1").unwrap();
    assert_eq!(run(&["bench", "--config", bad.path().to_str().unwrap()], b"").status.code(), Some(2));
}

#[test]
fn difftest_exit_codes() {
    let clean = run(&["difftest", "--trials", "50"], b"");
    assert_eq!(clean.status.code(), Some(0), "{}", stderr(&clean));
    assert_eq!(stdout(&clean), "");
    assert!(stderr(&clean).contains("discrepancies=0"));

    let paper = run(&["difftest", "--trials", "0", "--policy", "paper"], b"");
    assert_eq!(paper.status.code(), Some(3));
    let first: Value = serde_json::from_str(stdout(&paper).lines().next().unwrap()).unwrap();
    assert_eq!(first["pattern"], "6361626162");
    assert_eq!(first["expected"], serde_json::json!([0, 5]));
    assert_eq!(first["actual"], serde_json::json!([0]));
}
