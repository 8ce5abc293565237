//! `raagscan`: search for graphs whose right-angled Artin group has an
//! outer automorphism group that is not a virtual duality group.
//!
//! Exit codes: 0 on success, 1 on usage or input errors, 2 when fixture
//! assertions fail.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use raag_core::cm::{is_cohen_macaulay, raag_duality_verdict, CmMode};
use raag_core::complex::flag_complex;
use raag_core::graph::decode_graph6;
use raag_core::homology::reduced_homology;
use raag_core::raag::{out_is_finite, out_virtual_duality_verdict};
use raag_core::search::{
    jsonl_sink, run_pipeline, scan_corpus, search_random, verify_fixtures, CorpusSource, EdgeProbability, Emit,
    ObstructionSet, ScanConfig, ScanSummary, SearchConfig,
};
use raag_core::{Jobs, SimpleGraph};
use serde_json::json;

#[derive(Parser)]
#[command(name = "raagscan", version, about = "Scan graphs for duality obstructions in Out(A_Γ)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report on a single graph.
    Check {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Edges)]
        format: Format,
        /// Run the full Cohen–Macaulay check on the flag complex of the graph.
        #[arg(long)]
        full_cm: bool,
    },
    /// Random Erdős–Rényi search.
    Search {
        #[arg(long)]
        n: usize,
        /// Edge probability, or a sweep `lo..hi`.
        #[arg(long, default_value = "0.3..0.6")]
        p: EdgeProbability,
        #[arg(long)]
        count: u64,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        common: ScanArgs,
    },
    /// Scan a graph6 file or every graph up to a given order.
    Scan {
        #[arg(long, conflicts_with = "enumerate", required_unless_present = "enumerate")]
        input: Option<PathBuf>,
        #[arg(long)]
        enumerate: Option<usize>,
        #[command(flatten)]
        common: ScanArgs,
    },
    /// Verify the example fixtures.
    Fixtures {
        /// Directory holding the fixture files; defaults to the built-in copies.
        #[arg(long)]
        dir: Option<PathBuf>,
    },
    /// Reduced integral homology of the flag complex.
    Homology {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Edges)]
        format: Format,
    },
}

#[derive(Args)]
struct ScanArgs {
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Comma-separated subset of `nonpure,disconnected`.
    #[arg(long, default_value = "nonpure")]
    obstruction: ObstructionSet,
    /// Write JSON Lines reports here; the summary then goes to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Emit a report for every graph, not just new finds.
    #[arg(long)]
    all: bool,
    /// Record per-stage timings (makes output run-dependent).
    #[arg(long)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Edges,
    Graph6,
}

enum Failure {
    Usage(String),
    Assertion(String),
}

impl From<raag_core::Error> for Failure {
    fn from(e: raag_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn read_graph(path: &Path, format: Format) -> Result<SimpleGraph, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let parsed = match format {
        Format::Edges => SimpleGraph::parse_edge_list(&text),
        Format::Graph6 => {
            let line = text
                .lines()
                .map(str::trim)
                .find(|l| !l.is_empty() && *l != ">>graph6<<")
                .unwrap_or("");
            decode_graph6(line)
        }
    };
    parsed.map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// Writes a line to stdout, ignoring a closed pipe (`raagscan … | head`).
fn out_line(text: &str) {
    let _ = writeln!(io::stdout().lock(), "{text}");
}

fn print_json(value: &serde_json::Value) {
    out_line(&serde_json::to_string_pretty(value).expect("json"));
}

/// Streams reports to `--out` (summary to stdout) or to stdout (summary to
/// stderr).
fn run_streaming(
    out: Option<&Path>,
    run: impl FnOnce(&mut dyn Write) -> raag_core::Result<ScanSummary>,
) -> Result<(), Failure> {
    match out {
        Some(path) => {
            let file = File::create(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            let summary = run(&mut w)?;
            w.flush()?;
            out_line(&summary.to_json());
        }
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            let summary = run(&mut w)?;
            w.flush()?;
            eprintln!("{}", summary.to_json());
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Check { file, format, full_cm } => {
            let g = read_graph(&file, format)?;
            let report = run_pipeline(&g, ObstructionSet::ALL);
            let cm = if full_cm {
                raag_duality_verdict(&g).cm
            } else {
                is_cohen_macaulay(&flag_complex(&g), CmMode::PurityOnly)
            };
            print_json(&json!({
                "n": g.n(),
                "edge_count": g.edge_count(),
                "pipeline": report,
                "out_finiteness": out_is_finite(&g).ok(),
                "out_virtual_duality": out_virtual_duality_verdict(&g),
                "flag_complex_cm": cm,
                "cm_mode": if full_cm { "full" } else { "purity_only" },
            }));
        }
        Command::Search { n, p, count, seed, common } => {
            let cfg = SearchConfig {
                n,
                p,
                sample_count: count,
                master_seed: seed,
                obstructions: common.obstruction,
                jobs: Jobs(common.jobs),
                emit: if common.all { Emit::All } else { Emit::Found },
                timing: common.timing,
            };
            cfg.validate()?;
            run_streaming(common.out.as_deref(), |w| search_random(&cfg, &mut jsonl_sink(w)))?;
        }
        Command::Scan { input, enumerate, common } => {
            let cfg = ScanConfig {
                obstructions: common.obstruction,
                jobs: Jobs(common.jobs),
                emit: if common.all { Emit::All } else { Emit::Found },
                timing: common.timing,
            };
            let source = match (input, enumerate) {
                (Some(path), None) => {
                    let f = File::open(&path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                    CorpusSource::Graph6(Box::new(BufReader::new(f)))
                }
                (None, Some(max_n)) => CorpusSource::Enumerate { max_n },
                _ => return Err(Failure::Usage("give exactly one of --input or --enumerate".into())),
            };
            run_streaming(common.out.as_deref(), |w| scan_corpus(source, &cfg, &mut jsonl_sink(w)))?;
        }
        Command::Fixtures { dir } => {
            let report = verify_fixtures(dir.as_deref()).map_err(|e| Failure::Assertion(e.to_string()))?;
            for group in &report.groups {
                out_line(&format!("{} group {}: {}", if group.passed { "PASS" } else { "FAIL" }, group.id, group.title));
                for c in group.checks.iter().filter(|c| !c.passed) {
                    out_line(&format!("    failed: {} {}", c.name, c.detail));
                }
            }
            if !report.passed {
                return Err(Failure::Assertion("fixture assertions failed".into()));
            }
        }
        Command::Homology { file, format } => {
            let g = read_graph(&file, format)?;
            let k = flag_complex(&g);
            print_json(&json!({
                "dimension": k.dimension(),
                "reduced_homology": reduced_homology(&k),
            }));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Assertion(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
