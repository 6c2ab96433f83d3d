//! The `capcheck` command line.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::cap::{parse_cap, Cap, CapFormat};
use crate::completeness::{self, Algorithm, CompletenessReport, ReportJson};
use crate::error::{Error, ErrorClass};
use crate::geometry::Geometry;
use crate::quantum;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INCOMPLETE: i32 = 1;
pub const EXIT_NOT_A_CAP: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_RESOURCE: i32 = 4;

const MODULUS_HELP: &str = "Irreducible modulus of GF(2^k) as an integer (bit i = coefficient of x^i). \
Defaults: k=1 -> 3, k=2 -> 7, k=3 -> 11, k=4 -> 19, k=5 -> 37, k=6 -> 67, k=7 -> 131, k=8 -> 285";

#[derive(Debug, Parser)]
#[command(name = "capcheck", version, about = "Cap validation and completeness checking in PG(r, 2^k)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check that no three input points are collinear.
    Validate(RunArgs),
    /// Check whether the input cap is complete.
    Check(RunArgs),
    /// Greedily extend the input cap to a complete cap.
    Extend(RunArgs),
    /// Verify the quantum-cap conditions (q = 4 only).
    Quantum(RunArgs),
    /// Time the checkers on one or more cap files.
    Bench(RunArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Human,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlgorithmArg {
    Fast,
    Naive,
    Oracle,
}

impl From<AlgorithmArg> for Algorithm {
    fn from(a: AlgorithmArg) -> Self {
        match a {
            AlgorithmArg::Fast => Algorithm::Fast,
            AlgorithmArg::Naive => Algorithm::Naive,
            AlgorithmArg::Oracle => Algorithm::Oracle,
        }
    }
}

#[derive(Debug, Clone, Args)]
struct RunArgs {
    /// Projective space as `r,q`, q a power of two.
    #[arg(long, value_name = "R,Q")]
    geometry: String,
    #[arg(long, help = MODULUS_HELP)]
    modulus: Option<u32>,
    /// Completeness algorithm (bench runs fast and naive when omitted).
    #[arg(long, value_enum)]
    algorithm: Option<AlgorithmArg>,
    /// Number of coverage windows for the fast algorithm.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    shards: u64,
    /// Worker threads for split runs.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    workers: u64,
    /// Seed for `extend`.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Human)]
    format: OutputFormat,
    /// Write output here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Skip cap validation before checking.
    #[arg(long)]
    no_validate: bool,
    /// List every uncovered point instead of the first 10.
    #[arg(long)]
    all_witnesses: bool,
    /// Write extended caps as packed hexadecimal codes.
    #[arg(long)]
    packed: bool,
    /// Input files, `-` for stdin.
    #[arg(default_value = "-")]
    inputs: Vec<String>,
}

/// Parsed and checked command configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub geometry: Geometry,
    pub algorithm: Option<Algorithm>,
    pub shards: usize,
    pub workers: usize,
    pub seed: u64,
    pub format: OutputFormat,
    pub output: Option<PathBuf>,
    pub inputs: Vec<String>,
    pub validate: bool,
    pub all_witnesses: bool,
    pub packed: bool,
}

impl RunConfig {
    fn from_args(a: RunArgs) -> Result<Self, Error> {
        let geometry = Geometry::parse(&a.geometry, a.modulus)?;
        let shards = a.shards as usize;
        Ok(RunConfig {
            geometry,
            algorithm: a.algorithm.map(Into::into),
            shards,
            workers: (a.workers as usize).min(shards),
            seed: a.seed,
            format: a.format,
            output: a.output,
            inputs: a.inputs,
            validate: !a.no_validate,
            all_witnesses: a.all_witnesses,
            packed: a.packed,
        })
    }

    fn single_input(&self) -> Result<&str, Error> {
        match self.inputs.as_slice() {
            [one] => Ok(one),
            _ => Err(Error::Io("expected exactly one input".into())),
        }
    }
}

/// Outcome of one command: exit code plus text for stdout and stderr.
#[derive(Debug, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn exit_code(e: &Error) -> i32 {
    match e.class() {
        ErrorClass::NotACap => EXIT_NOT_A_CAP,
        ErrorClass::Parse => EXIT_PARSE,
        ErrorClass::Resource => EXIT_RESOURCE,
    }
}

fn error_outcome(e: &Error) -> Outcome {
    Outcome { code: exit_code(e), stdout: String::new(), stderr: format!("error: {e}\n") }
}

/// Runs the CLI. `args` includes the program name.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_PARSE,
            };
            if code == EXIT_OK {
                let _ = write!(stdout, "{e}");
            } else {
                let _ = write!(stderr, "{e}");
            }
            return code;
        }
    };
    let outcome = dispatch(cli.command, stdin);
    let _ = stderr.write_all(outcome.stderr.as_bytes());
    let _ = stdout.write_all(outcome.stdout.as_bytes());
    outcome.code
}

type CommandFn = fn(&RunConfig, &mut dyn Read) -> Result<Outcome, Error>;

fn dispatch(cmd: Command, stdin: &mut dyn Read) -> Outcome {
    let (args, f): (RunArgs, CommandFn) = match cmd {
        Command::Validate(a) => (a, cmd_validate),
        Command::Check(a) => (a, cmd_check),
        Command::Extend(a) => (a, cmd_extend),
        Command::Quantum(a) => (a, cmd_quantum),
        Command::Bench(a) => (a, cmd_bench),
    };
    let result = RunConfig::from_args(args).and_then(|cfg| {
        let out = f(&cfg, stdin)?;
        deliver(&cfg, out)
    });
    result.unwrap_or_else(|e| error_outcome(&e))
}

/// Moves stdout text to `--output` when one was given.
fn deliver(cfg: &RunConfig, mut out: Outcome) -> Result<Outcome, Error> {
    if let Some(path) = &cfg.output {
        std::fs::write(path, &out.stdout)?;
        out.stdout.clear();
    }
    Ok(out)
}

fn read_input(path: &str, stdin: &mut dyn Read) -> Result<String, Error> {
    if path == "-" {
        let mut s = String::new();
        stdin.read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))
    }
}

fn load_cap(cfg: &RunConfig, path: &str, stdin: &mut dyn Read) -> Result<Cap, Error> {
    let text = read_input(path, stdin)?;
    parse_cap(&text, &cfg.geometry)
}

fn coords_str(g: &Geometry, p: crate::geometry::PointCode) -> String {
    g.coords(p).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct ValidateJson {
    cap: bool,
    n: usize,
    geometry: String,
    witness: Option<Vec<Vec<u32>>>,
}

/// Exit 0 for a cap, 2 with a collinear triple otherwise.
pub fn cmd_validate(cfg: &RunConfig, stdin: &mut dyn Read) -> Result<Outcome, Error> {
    let cap = load_cap(cfg, cfg.single_input()?, stdin)?;
    let g = cap.geometry();
    let violation = cap.validate().err();
    let code = if violation.is_some() { EXIT_NOT_A_CAP } else { EXIT_OK };
    let stdout = match cfg.format {
        OutputFormat::Json => to_json(&ValidateJson {
            cap: violation.is_none(),
            n: cap.len(),
            geometry: g.label(),
            witness: violation.map(|v| v.triple.iter().map(|&p| g.coords(p)).collect()),
        }),
        OutputFormat::Human => match violation {
            None => format!("{}: {} points, valid cap\n", g.label(), cap.len()),
            Some(v) => {
                let mut s = format!("{}: not a cap, collinear points:\n", g.label());
                for p in v.triple {
                    let _ = writeln!(s, "  {}", coords_str(g, p));
                }
                s
            }
        },
    };
    Ok(Outcome { code, stdout, stderr: String::new() })
}

fn ensure_cap(cap: &Cap) -> Result<(), Error> {
    cap.validate().map_err(|v| {
        let g = cap.geometry();
        Error::InvalidInput(format!(
            "collinear points ({}) ({}) ({})",
            coords_str(g, v.triple[0]),
            coords_str(g, v.triple[1]),
            coords_str(g, v.triple[2])
        ))
    })
}

fn run_check(cfg: &RunConfig, cap: &Cap, algorithm: Algorithm) -> Result<CompletenessReport, Error> {
    if algorithm != Algorithm::Fast && cfg.shards > 1 {
        return Err(Error::Io(format!("--shards applies only to the fast algorithm, not {algorithm}")));
    }
    completeness::check(cap, algorithm, cfg.shards, cfg.workers)
}

fn human_report(g: &Geometry, r: &CompletenessReport, all: bool) -> String {
    let mut s = String::new();
    let verdict = if r.complete { "COMPLETE" } else { "INCOMPLETE" };
    let _ = writeln!(s, "{}: {}-cap is {verdict}", r.geometry, r.n);
    let _ = writeln!(s, "algorithm: {}, shards: {}", r.algorithm, r.shards);
    if !r.complete {
        let shown = if all { r.uncovered.len() } else { r.uncovered.len().min(completeness::DEFAULT_SAMPLE) };
        let _ = writeln!(s, "uncovered_count: {} (showing {shown})", r.uncovered.len());
        for &p in &r.uncovered[..shown] {
            let _ = writeln!(s, "  {}", coords_str(g, p));
        }
    }
    let _ = writeln!(s, "pairs_processed: {}", r.pairs_processed);
    let _ = writeln!(s, "marks_issued: {}", r.marks_issued);
    let _ = writeln!(s, "elapsed_ms: {:.3}", r.elapsed_ms);
    let _ = writeln!(s, "peak_coverage_bytes: {}", r.peak_coverage_bytes);
    s
}

/// Exit 0 if complete, 1 if not.
pub fn cmd_check(cfg: &RunConfig, stdin: &mut dyn Read) -> Result<Outcome, Error> {
    let cap = load_cap(cfg, cfg.single_input()?, stdin)?;
    if cfg.validate {
        ensure_cap(&cap)?;
    }
    let report = run_check(cfg, &cap, cfg.algorithm.unwrap_or(Algorithm::Fast))?;
    let g = cap.geometry();
    let stdout = match cfg.format {
        OutputFormat::Json => {
            let sample = if cfg.all_witnesses { None } else { Some(completeness::DEFAULT_SAMPLE) };
            to_json(&report.to_json(g, sample))
        }
        OutputFormat::Human => human_report(g, &report, cfg.all_witnesses),
    };
    let code = if report.complete { EXIT_OK } else { EXIT_INCOMPLETE };
    Ok(Outcome { code, stdout, stderr: String::new() })
}

/// Writes a complete cap extending the input.
pub fn cmd_extend(cfg: &RunConfig, stdin: &mut dyn Read) -> Result<Outcome, Error> {
    let cap = load_cap(cfg, cfg.single_input()?, stdin)?;
    ensure_cap(&cap)?;
    let grown = cap.greedy_extend(cfg.seed)?;
    let format = if cfg.packed { CapFormat::Packed } else { CapFormat::Text };
    let stdout = grown.write(format);
    let stderr = format!(
        "{}: extended {} -> {} points (seed {})\n",
        grown.geometry().label(),
        cap.len(),
        grown.len(),
        cfg.seed
    );
    Ok(Outcome { code: EXIT_OK, stdout, stderr })
}

/// Exit 0 iff the input is a quantum cap.
pub fn cmd_quantum(cfg: &RunConfig, stdin: &mut dyn Read) -> Result<Outcome, Error> {
    let cap = load_cap(cfg, cfg.single_input()?, stdin)?;
    ensure_cap(&cap)?;
    let v = quantum::verify_quantum_cap(&cap)?;
    let stdout = match cfg.format {
        OutputFormat::Json => to_json(&v),
        OutputFormat::Human => {
            let opt = |o: Option<bool>| o.map_or("not computed".to_string(), |b| b.to_string());
            format!(
                "{}: {}-cap\nspans_space: {}\nhermitian_self_orthogonal: {}\nhyperplane_parity_ok: {}\nall_weights_even: {}\nis_quantum_cap: {}\n",
                cap.geometry().label(),
                cap.len(),
                v.spans_space,
                v.hermitian_self_orthogonal,
                opt(v.hyperplane_parity_ok),
                opt(v.all_weights_even),
                v.is_quantum_cap
            )
        }
    };
    let code = if v.is_quantum_cap { EXIT_OK } else { EXIT_INCOMPLETE };
    Ok(Outcome { code, stdout, stderr: String::new() })
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub input: String,
    pub n: usize,
    pub algorithm: Algorithm,
    pub shards: usize,
    pub complete: bool,
    pub elapsed_ms: f64,
    pub peak_coverage_bytes: usize,
    pub pairs_processed: u64,
    /// Naive time over fast time for this input, on the fast row.
    pub naive_over_fast: Option<f64>,
}

/// One row per (input, algorithm).
pub fn cmd_bench(cfg: &RunConfig, stdin: &mut dyn Read) -> Result<Outcome, Error> {
    let algorithms = match cfg.algorithm {
        Some(a) => vec![a],
        None => vec![Algorithm::Fast, Algorithm::Naive],
    };
    let mut rows = Vec::new();
    for path in &cfg.inputs {
        let cap = load_cap(cfg, path, stdin)?;
        if cfg.validate {
            ensure_cap(&cap)?;
        }
        let first = rows.len();
        for &a in &algorithms {
            let shards = if a == Algorithm::Fast { cfg.shards } else { 1 };
            let cfg_a = RunConfig { shards, ..cfg.clone() };
            let r = run_check(&cfg_a, &cap, a)?;
            rows.push(BenchRow {
                input: path.clone(),
                n: r.n,
                algorithm: a,
                shards: r.shards,
                complete: r.complete,
                elapsed_ms: r.elapsed_ms,
                peak_coverage_bytes: r.peak_coverage_bytes,
                pairs_processed: r.pairs_processed,
                naive_over_fast: None,
            });
        }
        let of = |a| rows[first..].iter().find(|r: &&BenchRow| r.algorithm == a).map(|r| r.elapsed_ms);
        if let (Some(fast), Some(naive)) = (of(Algorithm::Fast), of(Algorithm::Naive)) {
            let ratio = naive / fast.max(1e-6);
            if let Some(row) = rows[first..].iter_mut().find(|r| r.algorithm == Algorithm::Fast) {
                row.naive_over_fast = Some(ratio);
            }
        }
    }
    let stdout = match cfg.format {
        OutputFormat::Json => to_json(&rows),
        OutputFormat::Human => {
            let mut s = format!(
                "{:<24} {:>8} {:>7} {:>6} {:>9} {:>14} {:>12} {:>14} {:>10}\n",
                "input", "n", "algo", "shards", "complete", "elapsed_ms", "peak_bytes", "pairs", "naive/fast"
            );
            for r in &rows {
                let ratio = r.naive_over_fast.map_or(String::from("-"), |x| format!("{x:.2}"));
                let _ = writeln!(
                    s,
                    "{:<24} {:>8} {:>7} {:>6} {:>9} {:>14.3} {:>12} {:>14} {:>10}",
                    r.input, r.n, r.algorithm, r.shards, r.complete, r.elapsed_ms, r.peak_coverage_bytes,
                    r.pairs_processed, ratio
                );
            }
            s
        }
    };
    Ok(Outcome { code: EXIT_OK, stdout, stderr: String::new() })
}

/// Parses a report previously written with `--format json`.
pub fn parse_report_json(text: &str) -> Result<ReportJson, Error> {
    serde_json::from_str(text).map_err(|e| Error::Io(e.to_string()))
}
