//! `sparsematch` command line.
//!
//! Exit codes follow grep: 0 found (or success), 1 nothing found, 2 usage or
//! I/O error. `difftest` exits 3 when it finds discrepancies.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};
use sparsematch_core::{Algorithm, Matcher, SearchConfig, ShiftPolicy, ShiftTables};

use crate::harness::{self, DiffConfig, ExperimentConfig, WITNESS};
use crate::snapshot::snapshot_json;

pub const EXIT_FOUND: i32 = 0;
pub const EXIT_NOT_FOUND: i32 = 1;
pub const EXIT_ERROR: i32 = 2;
pub const EXIT_DISCREPANCY: i32 = 3;

/// Default cap on input size read into memory (1 GiB).
pub const DEFAULT_MAX_INPUT: u64 = 1 << 30;

#[derive(Debug, Parser)]
#[command(name = "sparsematch", version, about = "Exact byte-string search anchored on a sparse substring of the pattern")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the 0-based offset of every occurrence, one per line.
    Find(FindArgs),
    /// Print the pattern's sparse anchor and shift tables as JSON.
    Stats(StatsArgs),
    /// Run the experiments described by a TOML config and print TSV tables.
    Bench(BenchArgs),
    /// Compare matchers against the exhaustive oracle on random inputs.
    Difftest(DiffArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct PatternArg {
    /// Pattern as a UTF-8 string.
    #[arg(long)]
    pattern: Option<String>,
    /// Pattern as hex-encoded bytes.
    #[arg(long, value_name = "HEX")]
    pattern_hex: Option<String>,
}

impl PatternArg {
    fn bytes(&self) -> anyhow::Result<Vec<u8>> {
        let bytes = match (&self.pattern, &self.pattern_hex) {
            (Some(s), _) => s.as_bytes().to_vec(),
            (None, Some(h)) => hex::decode(h).context("invalid --pattern-hex")?,
            (None, None) => unreachable!("clap enforces the group"),
        };
        if bytes.is_empty() {
            bail!("empty pattern");
        }
        Ok(bytes)
    }
}

#[derive(Debug, Args)]
struct FindArgs {
    #[command(flatten)]
    pattern: PatternArg,
    #[arg(long, default_value = "a")]
    algo: Algorithm,
    #[arg(long, default_value = "safe")]
    policy: ShiftPolicy,
    /// Seed for algorithm B's inspection order.
    #[arg(long, env = "SPARSEMATCH_SEED", default_value_t = 0)]
    seed: u64,
    /// Write the search counters as JSON to stderr.
    #[arg(long)]
    counters: bool,
    /// Refuse inputs larger than this many bytes.
    #[arg(long, default_value_t = DEFAULT_MAX_INPUT)]
    max_input_bytes: u64,
    /// Input file; stdin when omitted.
    file: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct StatsArgs {
    #[command(flatten)]
    pattern: PatternArg,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[arg(long)]
    config: PathBuf,
}

#[derive(Debug, Args)]
struct DiffArgs {
    /// Uniform random trials per alphabet size.
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, env = "SPARSEMATCH_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "safe")]
    policy: ShiftPolicy,
    #[arg(long, value_delimiter = ',', default_value = "a,b")]
    algo: Vec<Algorithm>,
    #[arg(long, value_delimiter = ',', default_value = "2,4,26,64")]
    alphabet: Vec<usize>,
    #[arg(long, default_value_t = 1)]
    min_n: usize,
    #[arg(long, default_value_t = 32)]
    max_n: usize,
    #[arg(long, default_value_t = 0)]
    min_m: usize,
    #[arg(long, default_value_t = 512)]
    max_m: usize,
    /// Additional trials per alphabet size with the pattern planted in the text.
    #[arg(long, default_value_t = 0)]
    planted: u64,
    #[arg(long, default_value_t = 128)]
    max_planted_n: usize,
    /// Maximum number of shrunk reproductions printed.
    #[arg(long, default_value_t = 20)]
    max_reported: usize,
    /// Skip the built-in regression cases.
    #[arg(long)]
    no_builtin_cases: bool,
}

/// Parses `argv` (including the program name) and runs the subcommand.
pub fn run_cli<I, T>(argv: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{rendered}");
                EXIT_ERROR
            } else {
                let _ = write!(stdout, "{rendered}");
                EXIT_FOUND
            };
        }
    };
    let result = match cli.command {
        Command::Find(args) => find(args, stdin, stdout, stderr),
        Command::Stats(args) => stats(args, stdout),
        Command::Bench(args) => bench(args, stdout),
        Command::Difftest(args) => difftest(args, stdout, stderr),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "sparsematch: {e:#}");
            EXIT_ERROR
        }
    }
}

fn read_limited(reader: impl Read, limit: u64, what: &str) -> anyhow::Result<Vec<u8>> {
    let mut buf = Vec::new();
    reader
        .take(limit.saturating_add(1))
        .read_to_end(&mut buf)
        .with_context(|| format!("reading {what}"))?;
    if buf.len() as u64 > limit {
        bail!("{what} exceeds --max-input-bytes ({limit} bytes)");
    }
    Ok(buf)
}

fn read_input(path: Option<&Path>, stdin: &mut dyn Read, limit: u64) -> anyhow::Result<Vec<u8>> {
    match path {
        Some(p) => {
            let what = p.display().to_string();
            let file = File::open(p).with_context(|| format!("cannot open {what}"))?;
            read_limited(file, limit, &what)
        }
        None => read_limited(stdin, limit, "stdin"),
    }
}

fn find(args: FindArgs, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> anyhow::Result<i32> {
    let matcher = Matcher::new(&args.pattern.bytes()?)?;
    let text = read_input(args.file.as_deref(), stdin, args.max_input_bytes)?;
    let config = SearchConfig::new(args.algo, args.policy, args.seed);
    let report = matcher.search(&text, &config);
    let mut out = io::BufWriter::new(stdout);
    for off in &report.occurrences {
        writeln!(out, "{off}")?;
    }
    out.flush()?;
    if report.known_incomplete {
        writeln!(stderr, "sparsematch: paper policy is a reproduction mode and may miss occurrences")?;
    }
    if args.counters {
        writeln!(stderr, "{}", snapshot_json(&report.counters))?;
    }
    Ok(if report.occurrences.is_empty() { EXIT_NOT_FOUND } else { EXIT_FOUND })
}

/// `{"default": shift for bytes absent from the pattern, "bytes": {hex: shift}}`.
fn shift_map(matcher: &Matcher, table: &[usize; 256]) -> Value {
    let pattern = matcher.pattern();
    let default = (0..=u8::MAX)
        .find(|&b| !pattern.contains(b))
        .map(|b| table[b as usize]);
    let bytes: Map<String, Value> = pattern
        .distinct_bytes()
        .map(|b| (format!("{b:02x}"), json!(table[b as usize])))
        .collect();
    json!({ "default": default, "bytes": bytes })
}

fn tables_json(matcher: &Matcher, tables: &ShiftTables) -> Value {
    json!({
        "t1": shift_map(matcher, tables.type1_table()),
        "t2": shift_map(matcher, tables.type2_table()),
        "t3": tables.type3(),
    })
}

/// The `stats` document. Positions are 0-based; bytes are two-digit hex.
pub fn stats_json(matcher: &Matcher) -> Value {
    let s = matcher.sparse();
    let p = matcher.pattern();
    json!({
        "indexing": "0-based",
        "n": p.len(),
        "delta": p.delta(),
        "sparse": {
            "substring_hex": hex::encode(&p.bytes()[s.start..=s.end]),
            "startpos": s.start,
            "endpos": s.end,
            "startc": format!("{:02x}", s.start_byte),
            "endc": format!("{:02x}", s.end_byte),
            "length": s.len(),
        },
        "shift_paper": tables_json(matcher, matcher.tables(ShiftPolicy::Paper)),
        "shift_safe": tables_json(matcher, matcher.tables(ShiftPolicy::Safe)),
    })
}

fn stats(args: StatsArgs, stdout: &mut dyn Write) -> anyhow::Result<i32> {
    let matcher = Matcher::new(&args.pattern.bytes()?)?;
    writeln!(stdout, "{}", serde_json::to_string_pretty(&stats_json(&matcher))?)?;
    Ok(EXIT_FOUND)
}

fn bench(args: BenchArgs, stdout: &mut dyn Write) -> anyhow::Result<i32> {
    let raw = std::fs::read_to_string(&args.config)
        .with_context(|| format!("cannot read {}", args.config.display()))?;
    let cfg: ExperimentConfig = toml::from_str(&raw).context("invalid bench config")?;
    cfg.validate()?;
    for table in harness::run_experiments(&cfg) {
        write!(stdout, "{}", table.to_tsv())?;
    }
    Ok(EXIT_FOUND)
}

fn difftest(args: DiffArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> anyhow::Result<i32> {
    if args.min_n == 0 || args.min_n > args.max_n {
        bail!("need 1 <= --min-n <= --max-n");
    }
    if args.min_m > args.max_m {
        bail!("need --min-m <= --max-m");
    }
    if args.max_planted_n == 0 {
        bail!("--max-planted-n must be at least 1");
    }
    if args.alphabet.is_empty() || args.alphabet.iter().any(|a| !(1..=256).contains(a)) {
        bail!("--alphabet sizes must be in 1..=256");
    }
    let extra_cases = if args.no_builtin_cases {
        Vec::new()
    } else {
        vec![(WITNESS.0.to_vec(), WITNESS.1.to_vec())]
    };
    let cfg = DiffConfig {
        trials: args.trials,
        seed: args.seed,
        alphabet_sizes: args.alphabet,
        pattern_len: args.min_n..=args.max_n,
        text_len: args.min_m..=args.max_m,
        planted_trials: args.planted,
        planted_pattern_len: 1..=args.max_planted_n,
        algorithms: args.algo,
        policies: vec![args.policy],
        extra_cases,
        max_reported: args.max_reported,
    };
    let report = harness::run_differential(&cfg);
    for d in &report.discrepancies {
        writeln!(stdout, "{}", d.to_json_line())?;
    }
    writeln!(
        stderr,
        "cases={} runs={} discrepancies={} reported={} read_bound_violations={}",
        report.cases,
        report.runs,
        report.discrepancy_count,
        report.discrepancies.len(),
        report.read_bound_violations,
    )?;
    Ok(if report.is_clean() { EXIT_FOUND } else { EXIT_DISCREPANCY })
}
