//! The `lga` command line: argument parsing, dispatch and exit codes.
//!
//! Exit status is 0 for a true verdict or a successful dump, 1 for a false
//! verdict or a failed cross-check, 2 for unreadable, malformed or
//! non-weakly-left-resolving input, and 3 for an internal inconsistency.

use std::ffi::OsString;
use std::io::IsTerminal;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::accommodating::{build_e, ActionSystem};
use crate::agreement::all_checks;
use crate::conditions::{verdict, Property};
use crate::error::Error;
use crate::graph::parse;
use crate::ideals::PairLattice;
use crate::oracle::{random_corpus, OracleConfig};
use crate::report::{
    analysis_report, config_report, lattice_report, render_analysis, render_check, render_ideals, render_oracle,
    show_witness, CheckReport, CheckRow, CorpusFailure, CorpusReport, ErrorReport, IdealsReport, Input, OracleReport,
    Style, Timing, VerdictReport,
};

pub const EXIT_TRUE: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "lga", version, about = "Analyze finitely presented labeled spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Append the wall-clock time to the output.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full structure report.
    Analyze {
        file: PathBuf,
        /// Write the Hasse diagram of the ideal-pair lattice as DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Decide one property; exit 0 when it holds and 1 when it fails.
    Check {
        file: PathBuf,
        /// simple, minimal, cond-l, cond-k, strongly-cofinal or disagreeable.
        prop: Property,
    },
    /// Ideal-pair lattice with generators and quotient descriptors.
    Ideals {
        file: PathBuf,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Compare every optimized procedure with its brute-force oracle.
    Oracle {
        file: PathBuf,
        #[arg(long, default_value_t = 12)]
        max_word_len: usize,
        /// Strong-cofinality unrolling depth; defaults to twice the size of E.
        #[arg(long)]
        max_unroll: Option<usize>,
        /// Seed for the random corpus.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also run the checks on this many random instances.
        #[arg(long)]
        corpus: Option<usize>,
    },
}

/// Captured result of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn out(code: i32, stdout: String) -> Self {
        Outcome { code, stdout, stderr: String::new() }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_TRUE };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome::out(code, text)
            };
        }
    };
    let color = match std::env::var("LGA_COLOR").as_deref() {
        Err(_) | Ok("auto") => cli.format == Format::Text && std::io::stdout().is_terminal(),
        Ok("never") => false,
        Ok(other) => {
            return Outcome {
                code: EXIT_INPUT,
                stdout: String::new(),
                stderr: format!("error: LGA_COLOR must be `auto` or `never`, not `{other}`\n"),
            }
        }
    };
    execute(&cli, Style { color })
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

struct Loaded {
    text: String,
    system: ActionSystem,
}

fn fail(cli: &Cli, path: &Path, e: &Error) -> Outcome {
    let code = match e {
        Error::InternalInconsistency { .. } => EXIT_INTERNAL,
        _ => EXIT_INPUT,
    };
    match cli.format {
        Format::Json => Outcome::out(code, json(&ErrorReport::from_error(e))),
        Format::Text => {
            let msg = match e {
                Error::Parse { line, column, kind } => format!("{}:{line}:{column}: {kind}", path.display()),
                other => format!("{}: {other}", path.display()),
            };
            Outcome { code, stdout: String::new(), stderr: format!("error: {msg}\n") }
        }
    }
}

fn load(cli: &Cli, path: &Path) -> Result<Loaded, Outcome> {
    let text = std::fs::read_to_string(path).map_err(|e| fail(cli, path, &Error::Io(e)))?;
    let graph = parse(&text).map_err(|e| fail(cli, path, &e))?;
    let system = build_e(&graph);
    if let Err(v) = system.check_wlr() {
        let report = ErrorReport::wlr(system.graph(), &v);
        return Err(match cli.format {
            Format::Json => Outcome::out(EXIT_INPUT, json(&report)),
            Format::Text => Outcome {
                code: EXIT_INPUT,
                stdout: String::new(),
                stderr: format!("error: {}: {}\n", path.display(), report.error.message),
            },
        });
    }
    Ok(Loaded { text, system })
}

fn write_dot(cli: &Cli, path: &Path, dot: &str) -> Result<(), Outcome> {
    std::fs::write(path, dot).map_err(|e| fail(cli, path, &Error::Io(e)))
}

pub fn execute(cli: &Cli, style: Style) -> Outcome {
    let start = Instant::now();
    let timing = || cli.timing.then(|| Timing { total_ms: start.elapsed().as_secs_f64() * 1000.0 });
    let result = match &cli.command {
        Command::Analyze { file, dot } => analyze(cli, file, dot.as_deref(), style, &timing),
        Command::Check { file, prop } => check(cli, file, *prop, style, &timing),
        Command::Ideals { file, dot } => ideals(cli, file, dot.as_deref(), style, &timing),
        Command::Oracle { file, max_word_len, max_unroll, seed, corpus } => {
            let cfg = OracleConfig { max_word_length: *max_word_len, max_unroll: *max_unroll, seed: *seed };
            oracle(cli, file, &cfg, *corpus, style, &timing)
        }
    };
    result.unwrap_or_else(|o| o)
}

type Clock<'a> = &'a dyn Fn() -> Option<Timing>;

fn analyze(cli: &Cli, file: &Path, dot: Option<&Path>, style: Style, timing: Clock) -> Result<Outcome, Outcome> {
    let l = load(cli, file)?;
    let mut report = analysis_report(&l.text, &l.system).map_err(|e| fail(cli, file, &e))?;
    if let Some(p) = dot {
        write_dot(cli, p, &PairLattice::new(&l.system).to_dot(&l.system))?;
    }
    report.timing = timing();
    Ok(Outcome::out(
        EXIT_TRUE,
        match cli.format {
            Format::Json => json(&report),
            Format::Text => render_analysis(&report, style),
        },
    ))
}

fn check(cli: &Cli, file: &Path, prop: Property, style: Style, timing: Clock) -> Result<Outcome, Outcome> {
    let l = load(cli, file)?;
    let v = verdict(&l.system, prop).map_err(|e| fail(cli, file, &e))?;
    let report = CheckReport {
        report: "check",
        input: Input::hashed(&l.text),
        verdict: VerdictReport::new(l.system.graph(), &v),
        timing: timing(),
    };
    let code = if v.value { EXIT_TRUE } else { EXIT_FALSE };
    Ok(match cli.format {
        Format::Json => Outcome::out(code, json(&report)),
        Format::Text => Outcome {
            code,
            stdout: render_check(&report, style),
            stderr: report
                .verdict
                .witness
                .as_ref()
                .map(|w| format!("{} is false: {}\n", prop, show_witness(w)))
                .unwrap_or_default(),
        },
    })
}

fn ideals(cli: &Cli, file: &Path, dot: Option<&Path>, style: Style, timing: Clock) -> Result<Outcome, Outcome> {
    let l = load(cli, file)?;
    let lattice = lattice_report(&l.system).map_err(|e| fail(cli, file, &e))?;
    if let Some(p) = dot {
        write_dot(cli, p, &PairLattice::new(&l.system).to_dot(&l.system))?;
    }
    let report = IdealsReport { report: "ideals", input: Input::hashed(&l.text), lattice, timing: timing() };
    Ok(Outcome::out(
        EXIT_TRUE,
        match cli.format {
            Format::Json => json(&report),
            Format::Text => render_ideals(&report, style),
        },
    ))
}

fn oracle(
    cli: &Cli,
    file: &Path,
    cfg: &OracleConfig,
    corpus: Option<usize>,
    style: Style,
    timing: Clock,
) -> Result<Outcome, Outcome> {
    cfg.validate().map_err(|e| fail(cli, file, &e))?;
    let l = load(cli, file)?;
    let checks = all_checks(&l.system, cfg).map_err(|e| fail(cli, file, &e))?;
    let mut ok = checks.iter().all(|c| c.holds);
    let corpus = corpus.map(|n| {
        let c = random_corpus(cfg, n);
        let mut failures = Vec::new();
        for (instance, g) in c.graphs.iter().enumerate() {
            let sys = build_e(g);
            let push = |failures: &mut Vec<CorpusFailure>, check: String, detail: String| {
                failures.push(CorpusFailure { instance, check, detail, graph: g.serialize() })
            };
            match all_checks(&sys, cfg) {
                Ok(rows) => rows
                    .into_iter()
                    .filter(|r| !r.holds)
                    .for_each(|r| push(&mut failures, r.name.to_string(), r.detail)),
                Err(e) => push(&mut failures, "route-agreement".into(), e.to_string()),
            }
        }
        ok &= failures.is_empty();
        CorpusReport { seed: cfg.seed, instances: n, discarded: c.discarded, failures }
    });
    let report = OracleReport {
        report: "oracle",
        input: Input::hashed(&l.text),
        config: config_report(&l.system, cfg),
        checks: checks.iter().map(CheckRow::from).collect(),
        corpus,
        timing: timing(),
    };
    let code = if ok { EXIT_TRUE } else { EXIT_FALSE };
    Ok(Outcome::out(
        code,
        match cli.format {
            Format::Json => json(&report),
            Format::Text => render_oracle(&report, style),
        },
    ))
}
