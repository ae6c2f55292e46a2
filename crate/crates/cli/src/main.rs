//! `cis`: construct graphs, count connected induced subgraphs, compute
//! invariants, and run the exhaustive certifier from the command line.
//!
//! stdout carries only the payload (graph6, JSON, JSON lines); progress and
//! diagnostics go to stderr.

mod config;

use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cis_core::constructions::{self, FamilyId};
use cis_core::count::{count_expansion, count_subset_oracle};
use cis_core::explore::{lemma_trials, search_min_grid, write_reproducer, LemmaSummary, MinConstraint};
use cis_core::graph::Graph;
use cis_core::graph6::{decode_graph6, encode_graph6};
use cis_core::invariants::profile;
use cis_core::verify::{
    certify, certify_grid, reports_to_csv, reports_to_json_lines, ClassSpec, ParamSelection, ScanOptions, Theorem,
    Verdict,
};
use serde::Serialize;
use thiserror::Error;

use config::Config;

#[derive(Debug, Parser)]
#[command(name = "cis", version, about = "Connected induced subgraphs of small graphs")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Flat key = value configuration file (also CIS_CONFIG).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads for scans (also CIS_WORKERS).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Largest order scanned without --allow-n8, at most 7 (also CIS_ENUM_CAP).
    #[arg(long, global = true)]
    enum_cap: Option<usize>,
    /// Largest order the subset sweep accepts (also CIS_ORACLE_CAP).
    #[arg(long, global = true)]
    oracle_cap: Option<usize>,
    /// Fraction of scanned graphs recounted by the subset sweep (also CIS_AUDIT_RATE).
    #[arg(long, global = true)]
    audit_rate: Option<f64>,
    /// Directory for report files (also CIS_OUT_DIR).
    #[arg(long = "out", global = true)]
    out_dir: Option<PathBuf>,
    /// More progress on stderr; repeat for debug output.
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AlgorithmArg {
    Oracle,
    Expansion,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ParamsArg {
    /// The published parameter range.
    Published,
    /// Every admissible parameter value.
    All,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a family member as graph6.
    Construct {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        param: Option<usize>,
    },
    /// Count connected induced subgraphs of a graph6 graph (stdin or --g6).
    Count {
        #[arg(long)]
        g6: Option<String>,
        #[arg(long, value_enum, default_value = "expansion")]
        algorithm: AlgorithmArg,
    },
    /// Structural parameters of a graph6 graph (stdin or --g6).
    Invariants {
        #[arg(long)]
        g6: Option<String>,
    },
    /// Certify one class by exhaustive enumeration.
    Certify {
        #[arg(long)]
        theorem: Theorem,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        param: usize,
        /// Permit the order-8 scan (2^28 graphs).
        #[arg(long)]
        allow_n8: bool,
    },
    /// Certify every class for orders n-min..=n-max.
    CertifyGrid {
        #[arg(long)]
        theorem: Theorem,
        #[arg(long, default_value_t = 4)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_enum, default_value = "published")]
        params: ParamsArg,
        #[arg(long)]
        allow_n8: bool,
    },
    /// Randomized trials of the two-branch gluing inequality.
    LemmaCheck {
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, default_value_t = 4)]
        max_part: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Minimize the count over connected graphs with a fixed parameter.
    SearchMin {
        #[arg(long)]
        constraint: MinConstraint,
        #[arg(long)]
        n: usize,
        /// Upper end of an order range starting at --n.
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long)]
        param: usize,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    EmptyClass(String),
    #[error("{0}")]
    Violation(String),
    #[error("{0}")]
    Io(#[from] io::Error),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::EmptyClass(_) => 3,
            CliError::Violation(_) => 4,
            CliError::Io(_) => 1,
        }
    }
}

fn usage(e: impl ToString) -> CliError {
    CliError::Usage(e.to_string())
}

fn resolve_config(g: &GlobalArgs) -> Result<Config, CliError> {
    let mut c = Config::load(g.config.as_deref(), std::env::vars()).map_err(usage)?;
    let flags = [
        ("workers", g.workers.map(|v| v.to_string())),
        ("enum_cap", g.enum_cap.map(|v| v.to_string())),
        ("oracle_cap", g.oracle_cap.map(|v| v.to_string())),
        ("audit_rate", g.audit_rate.map(|v| v.to_string())),
        ("out_dir", g.out_dir.as_ref().map(|v| v.display().to_string())),
    ];
    for (key, value) in flags {
        if let Some(value) = value {
            c.set("command line", key, &value).map_err(usage)?;
        }
    }
    Ok(c)
}

fn scan_options(c: &Config, allow_n8: bool) -> ScanOptions {
    ScanOptions { workers: c.workers, audit_rate: c.audit_rate, enum_cap: c.enum_cap_for(allow_n8) }
}

fn read_graph(g6: Option<String>) -> Result<Graph, CliError> {
    let text = match g6 {
        Some(s) => s,
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            s.lines().map(str::trim).find(|l| !l.is_empty()).unwrap_or("").to_string()
        }
    };
    decode_graph6(text.trim()).map_err(usage)
}

struct Output {
    out: io::StdoutLock<'static>,
}

impl Output {
    fn line(&mut self, s: &str) -> io::Result<()> {
        writeln!(self.out, "{s}")
    }

    fn json<T: Serialize>(&mut self, value: &T) -> io::Result<()> {
        self.line(&serde_json::to_string(value).expect("payload serializes"))
    }
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<(), CliError> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(name);
    std::fs::write(&path, contents)?;
    log::info!("wrote {}", path.display());
    Ok(())
}

fn run(cli: Cli, out: &mut Output) -> Result<(), CliError> {
    let config = resolve_config(&cli.global)?;
    log::debug!("{config:?}");
    match cli.command {
        Command::Construct { family, n, param } => {
            let family: FamilyId = family.parse().map_err(usage)?;
            let param = match (family.takes_param(), param) {
                (true, None) => return Err(usage(format!("family {family} needs --param"))),
                (_, p) => p.unwrap_or(0),
            };
            let g = constructions::build(family, n, param).map_err(usage)?;
            out.line(&encode_graph6(&g))?;
        }
        Command::Count { g6, algorithm } => {
            let g = read_graph(g6)?;
            let count = match algorithm {
                AlgorithmArg::Expansion => count_expansion(&g),
                AlgorithmArg::Oracle => {
                    if g.order() > config.oracle_cap {
                        return Err(usage(format!(
                            "order {} exceeds the subset-sweep cap {}",
                            g.order(),
                            config.oracle_cap
                        )));
                    }
                    count_subset_oracle(&g).map_err(usage)?
                }
            };
            out.json(&count)?;
        }
        Command::Invariants { g6 } => {
            let g = read_graph(g6)?;
            out.json(&profile(&g).map_err(usage)?)?;
        }
        Command::Certify { theorem, n, param, allow_n8 } => {
            let spec = ClassSpec::new(theorem, n, param).map_err(usage)?;
            let report = certify(spec, &scan_options(&config, allow_n8)).map_err(usage)?;
            out.json(&report)?;
            match report.verdict() {
                Verdict::Empty => return Err(CliError::EmptyClass(format!("{theorem} = {param} is empty at order {n}"))),
                Verdict::Failed => {
                    return Err(CliError::Violation(format!(
                        "{theorem} = {param}, n = {n}: maximizer is not the construction"
                    )))
                }
                Verdict::Certified | Verdict::Recorded => {}
            }
        }
        Command::CertifyGrid { theorem, n_min, n_max, params, allow_n8 } => {
            if n_min < 2 || n_min > n_max {
                return Err(usage(format!("invalid order range {n_min}..={n_max}")));
            }
            let selection = match params {
                ParamsArg::Published => ParamSelection::Published,
                ParamsArg::All => ParamSelection::All,
            };
            let reports =
                certify_grid(theorem, n_min..=n_max, &selection, &scan_options(&config, allow_n8)).map_err(usage)?;
            write!(out.out, "{}", reports_to_json_lines(&reports))?;
            if let Some(dir) = &config.out_dir {
                write_file(dir, "reports.jsonl", &reports_to_json_lines(&reports))?;
                write_file(dir, "summary.csv", &reports_to_csv(&reports))?;
            }
            let failed: Vec<String> = reports
                .iter()
                .filter(|r| r.verdict() == Verdict::Failed)
                .map(|r| format!("n={} param={}", r.spec.n, r.spec.param))
                .collect();
            if !failed.is_empty() {
                return Err(CliError::Violation(format!("{theorem}: not certified at {}", failed.join(", "))));
            }
            if !reports.is_empty() && reports.iter().all(|r| r.verdict() == Verdict::Empty) {
                return Err(CliError::EmptyClass(format!("{theorem}: every class is empty")));
            }
        }
        Command::LemmaCheck { trials, max_part, seed } => {
            let results = lemma_trials(trials, max_part, seed).map_err(usage)?;
            let summary = LemmaSummary::from_trials(&results, max_part, seed);
            out.json(&summary)?;
            if !summary.failures.is_empty() {
                if let Some(dir) = &config.out_dir {
                    std::fs::create_dir_all(dir)?;
                    for t in &summary.failures {
                        let path = dir.join(format!("lemma-reproducer-{}.json", t.seed));
                        write_reproducer(t, &path).map_err(|e| CliError::Io(io::Error::other(e.to_string())))?;
                        log::warn!("reproducer written to {}", path.display());
                    }
                }
                return Err(CliError::Violation(format!(
                    "{} of {} trials violate the inequality",
                    summary.failures.len(),
                    summary.trials
                )));
            }
        }
        Command::SearchMin { constraint, n, n_max, param } => {
            let n_max = n_max.unwrap_or(n);
            if n < 1 || n > n_max {
                return Err(usage(format!("invalid order range {n}..={n_max}")));
            }
            let results = search_min_grid(constraint, n..=n_max, param, &scan_options(&config, false)).map_err(usage)?;
            for r in &results {
                out.json(r)?;
            }
            if results.iter().all(|r| r.empty_class) {
                return Err(CliError::EmptyClass(format!("no connected graph has {constraint} = {param}")));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let level = match cli.global.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();

    let mut out = Output { out: io::stdout().lock() };
    let result = run(cli, &mut out);
    let _ = out.out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("cis: {e}");
            ExitCode::from(e.code())
        }
    }
}
