use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::json;

use criticalis::builtins::{builtin_graph, BUILTIN_NAMES};
use criticalis::critical::{corank, corank_blowup, critical_ideal, CriticalError};
use criticalis::groebner::{GbConfig, GbError};
use criticalis::polyring::CoefficientRing;
use criticalis::sgraph::{
    cotree, parse_graph, to_graph6, GraphError, GraphFormat, SignedMultidigraph, TwinVector,
};
use criticalis::suites::{run_suite, scan_graph, Conjecture, ScanOutcome, SUITE_NAMES};

const EXIT_PARSE: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_ALL_SKIPPED: u8 = 4;

/// Exact computation of critical ideals and algebraic co-rank for signed
/// multidigraphs.
#[derive(Parser)]
#[command(name = "criticalis", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Coefficient ring: `Z` (default) or `Z/p` for a prime p.
    #[arg(long, global = true)]
    ring: Option<String>,
    /// Cap on critical pairs per basis computation.
    #[arg(long, global = true)]
    max_pairs: Option<usize>,
    /// Cap on the total degree of basis elements.
    #[arg(long, global = true)]
    max_degree: Option<u32>,
    /// Seed for randomized steps (sampling, suite shuffles).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output format: `json` (default) or `text`.
    #[arg(long, global = true)]
    format: Option<String>,
    /// Optional JSON config file; explicit flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the algebraic co-rank of a graph.
    Corank {
        /// Graph: a file path, a graph6 string, or `builtin:<name>`.
        graph: String,
        #[command(flatten)]
        common: Common,
    },
    /// Compute the generators of one critical ideal.
    Ideal {
        graph: String,
        /// Ideal index i (size of the minors).
        #[arg(long, short)]
        index: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Co-rank of a blowup described by an integer vector.
    Blowup {
        graph: String,
        /// Comma-separated integers, one per vertex; positive entries add
        /// duplicates, negative entries add replicates.
        #[arg(long, short, allow_hyphen_values = true)]
        d: String,
        /// Also build the blowup graph explicitly and cross-check.
        #[arg(long)]
        check: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Run verification suites (exhaustive/randomized identity checks).
    Verify {
        /// Suite names, or `all`.
        #[arg(required = true)]
        suites: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Scan a stream of graph6 graphs against a conjectured bound.
    Scan {
        /// Conjecture: `twinfree-bound` or `tree-bound`.
        #[arg(long)]
        conjecture: String,
        /// Input file with one graph6 string per line (`-` for stdin).
        #[arg(long, short)]
        input: String,
        /// Append-only JSON-lines output; existing records are not redone.
        #[arg(long, short)]
        output: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Print the cotree of a cograph.
    Cotree {
        graph: String,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Deserialize, Default)]
struct FileConfig {
    ring: Option<String>,
    max_pairs: Option<usize>,
    max_degree: Option<u32>,
    seed: Option<u64>,
    format: Option<String>,
}

struct Settings {
    ring: CoefficientRing,
    ring_name: String,
    cfg: GbConfig,
    json: bool,
}

enum CliError {
    Parse(String),
    Budget(String),
    AllSkipped,
    Other(String),
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<GbError> for CliError {
    fn from(e: GbError) -> Self {
        match e {
            GbError::BudgetExceeded(_) => CliError::Budget(e.to_string()),
        }
    }
}

impl From<CriticalError> for CliError {
    fn from(e: CriticalError) -> Self {
        match e {
            CriticalError::Gb(g) => g.into(),
            CriticalError::Graph(g) => g.into(),
            other => CliError::Other(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Parse(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_PARSE)
        }
        Err(CliError::Budget(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_BUDGET)
        }
        Err(CliError::AllSkipped) => {
            eprintln!("error: every input graph was skipped by the conjecture's hypotheses");
            ExitCode::from(EXIT_ALL_SKIPPED)
        }
        Err(CliError::Other(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}

fn settings(common: &Common) -> Result<Settings, CliError> {
    let file: FileConfig = match &common.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Parse(format!("config {}: {}", path.display(), e)))?;
            serde_json::from_str(&text)
                .map_err(|e| CliError::Parse(format!("config {}: {}", path.display(), e)))?
        }
        None => FileConfig::default(),
    };
    // flag beats config file beats environment beats default
    let mut cfg = GbConfig::from_env();
    if let Some(v) = file.max_pairs {
        cfg.max_pairs = v;
    }
    if let Some(v) = file.max_degree {
        cfg.max_degree = v;
    }
    if let Some(v) = file.seed {
        cfg.seed = v;
    }
    if let Some(v) = common.max_pairs {
        cfg.max_pairs = v;
    }
    if let Some(v) = common.max_degree {
        cfg.max_degree = v;
    }
    if let Some(v) = common.seed {
        cfg.seed = v;
    }
    let ring_name = common
        .ring
        .clone()
        .or_else(|| file.ring.clone())
        .unwrap_or_else(|| "Z".to_string());
    let ring = parse_ring(&ring_name)?;
    let format = common
        .format
        .clone()
        .or_else(|| file.format.clone())
        .unwrap_or_else(|| "json".to_string());
    let json = match format.as_str() {
        "json" => true,
        "text" => false,
        other => {
            return Err(CliError::Parse(format!(
                "unknown format '{other}' (expected json or text)"
            )))
        }
    };
    Ok(Settings {
        ring,
        ring_name,
        cfg,
        json,
    })
}

fn parse_ring(s: &str) -> Result<CoefficientRing, CliError> {
    if s == "Z" {
        return Ok(CoefficientRing::Int);
    }
    if let Some(p) = s.strip_prefix("Z/") {
        let p: u32 = p
            .parse()
            .map_err(|_| CliError::Parse(format!("bad modulus in ring '{s}'")))?;
        if p < 2 || (2..p).any(|d| d * d <= p && p.is_multiple_of(d)) {
            return Err(CliError::Parse(format!("ring modulus {p} is not prime")));
        }
        return Ok(CoefficientRing::Mod(p));
    }
    Err(CliError::Parse(format!(
        "unknown ring '{s}' (expected Z or Z/p)"
    )))
}

fn load_graph(spec: &str) -> Result<SignedMultidigraph, CliError> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        return builtin_graph(name).map_err(|e| {
            CliError::Parse(format!("{e}; builtins: {}", BUILTIN_NAMES.join(", ")))
        });
    }
    let path = std::path::Path::new(spec);
    if path.exists() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Parse(format!("{spec}: {e}")))?;
        let format = if text.trim_start().starts_with('n') {
            GraphFormat::EdgeList
        } else {
            GraphFormat::Graph6
        };
        return Ok(parse_graph(&text, format)?);
    }
    Ok(parse_graph(spec, GraphFormat::Graph6)?)
}

fn emit(
    s: &Settings,
    graph: &str,
    index: Option<usize>,
    generators: Option<Vec<String>>,
    trivial: Option<bool>,
    gamma: Option<usize>,
    started: Instant,
) {
    let timing_ms = started.elapsed().as_millis() as u64;
    if s.json {
        let record = json!({
            "graph": graph,
            "ring": s.ring_name,
            "index": index,
            "generators": generators,
            "trivial": trivial,
            "gamma": gamma,
            "timing_ms": timing_ms,
        });
        println!("{record}");
    } else {
        if let Some(g) = gamma {
            println!("gamma = {g}");
        }
        if let Some(i) = index {
            println!("index = {i}");
        }
        if let Some(t) = trivial {
            println!("trivial = {t}");
        }
        if let Some(gens) = generators {
            println!("generators ({}):", gens.len());
            for g in gens {
                println!("  {g}");
            }
        }
        eprintln!("done in {timing_ms} ms");
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Corank { graph, common } => {
            let s = settings(&common)?;
            let g = load_graph(&graph)?;
            let started = Instant::now();
            let report = corank(&g, s.ring, &s.cfg)?;
            emit(&s, &graph, None, None, None, Some(report.gamma), started);
            Ok(())
        }
        Command::Ideal {
            graph,
            index,
            common,
        } => {
            let s = settings(&common)?;
            let g = load_graph(&graph)?;
            let started = Instant::now();
            let result = critical_ideal(&g, index, s.ring, &s.cfg)?;
            let gens = result
                .ideal
                .generators()
                .iter()
                .map(|p| p.to_canonical_string())
                .collect();
            emit(
                &s,
                &graph,
                Some(index),
                Some(gens),
                Some(result.trivial),
                None,
                started,
            );
            Ok(())
        }
        Command::Blowup {
            graph,
            d,
            check,
            common,
        } => {
            let s = settings(&common)?;
            let g = load_graph(&graph)?;
            let d = if d.contains(':') {
                TwinVector::parse(&d)?
            } else {
                let vals = d
                    .split(',')
                    .map(|t| t.trim().parse::<i64>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| {
                        CliError::Parse(format!("bad blowup vector {d:?} (expected integers)"))
                    })?;
                TwinVector::from_slice(&vals)
            };
            d.validate(&g)?;
            let started = Instant::now();
            let report = corank_blowup(&g, &d, s.ring, &s.cfg, check)?;
            emit(&s, &graph, None, None, None, Some(report.gamma), started);
            Ok(())
        }
        Command::Verify { suites, common } => {
            let s = settings(&common)?;
            let names: Vec<&str> = if suites.iter().any(|x| x == "all") {
                SUITE_NAMES.to_vec()
            } else {
                suites.iter().map(String::as_str).collect()
            };
            let mut failed = false;
            for name in names {
                let started = Instant::now();
                let report = run_suite(name, &s.cfg).map_err(CliError::from)?;
                let ms = started.elapsed().as_millis() as u64;
                if s.json {
                    println!(
                        "{}",
                        json!({
                            "suite": report.name,
                            "cases": report.cases,
                            "passed": report.passed(),
                            "failures": report.failures,
                            "timing_ms": ms,
                        })
                    );
                } else {
                    println!(
                        "{}: {} ({} cases, {} ms)",
                        report.name,
                        if report.passed() { "PASS" } else { "FAIL" },
                        report.cases,
                        ms
                    );
                    for f in &report.failures {
                        println!("  {f}");
                    }
                }
                failed |= !report.passed();
            }
            if failed {
                Err(CliError::Other("one or more suites failed".into()))
            } else {
                Ok(())
            }
        }
        Command::Scan {
            conjecture,
            input,
            output,
            common,
        } => {
            let s = settings(&common)?;
            let conjecture = Conjecture::parse(&conjecture).ok_or_else(|| {
                CliError::Parse(format!(
                    "unknown conjecture '{conjecture}' (expected twinfree-bound or tree-bound)"
                ))
            })?;
            run_scan(&s, conjecture, &input, &output)
        }
        Command::Cotree { graph, common } => {
            let s = settings(&common)?;
            let g = load_graph(&graph)?;
            let t = cotree(&g)?;
            if s.json {
                println!(
                    "{}",
                    json!({ "graph": graph, "cotree": t.render() })
                );
            } else {
                println!("{}", t.render());
            }
            Ok(())
        }
    }
}

fn run_scan(
    s: &Settings,
    conjecture: Conjecture,
    input: &str,
    output: &std::path::Path,
) -> Result<(), CliError> {
    let text = if input == "-" {
        let mut buf = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin().lock(), &mut buf)
            .map_err(|e| CliError::Parse(format!("stdin: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(input).map_err(|e| CliError::Parse(format!("{input}: {e}")))?
    };
    let lines: Vec<&str> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .collect();

    // resume: collect graph6 keys already present in the output file
    let mut done = std::collections::HashSet::new();
    if output.exists() {
        let existing = std::fs::read_to_string(output)
            .map_err(|e| CliError::Parse(format!("{}: {e}", output.display())))?;
        for line in existing.lines() {
            if let Ok(v) = serde_json::from_str::<serde_json::Value>(line) {
                if v.get("conjecture").and_then(|c| c.as_str()) == Some(conjecture.name()) {
                    if let Some(g6) = v.get("graph6").and_then(|g| g.as_str()) {
                        done.insert(g6.to_string());
                    }
                }
            }
        }
    }
    let mut out = std::fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(output)
        .map_err(|e| CliError::Parse(format!("{}: {e}", output.display())))?;

    let mut checked = 0usize;
    let mut skipped = 0usize;
    let mut counterexamples = 0usize;
    for line in &lines {
        let g = parse_graph(line, GraphFormat::Graph6)?;
        let g6 = to_graph6(&g)?;
        if done.contains(&g6) {
            checked += 1; // already on record
            continue;
        }
        let record = match scan_graph(&g, conjecture, &s.cfg)? {
            ScanOutcome::Skipped(reason) => {
                skipped += 1;
                json!({
                    "conjecture": conjecture.name(),
                    "graph6": g6,
                    "skipped": reason,
                })
            }
            ScanOutcome::Checked {
                gamma,
                bound,
                holds,
            } => {
                checked += 1;
                if !holds {
                    counterexamples += 1;
                }
                json!({
                    "conjecture": conjecture.name(),
                    "graph6": g6,
                    "gamma": gamma,
                    "bound": bound,
                    "holds": holds,
                })
            }
        };
        writeln!(out, "{record}").map_err(|e| CliError::Parse(format!("write: {e}")))?;
        out.flush().ok();
    }
    println!(
        "{}",
        json!({
            "conjecture": conjecture.name(),
            "inputs": lines.len(),
            "checked": checked,
            "skipped": skipped,
            "counterexamples": counterexamples,
        })
    );
    if checked == 0 && skipped > 0 {
        return Err(CliError::AllSkipped);
    }
    Ok(())
}
