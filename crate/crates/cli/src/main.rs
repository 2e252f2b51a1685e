//! `adicol`: command-line front end.
//!
//! Exit codes: 0 yes/ok, 2 definitive no (reason on stdout), 3 input error,
//! 4 resource limit, 64 usage, 70 internal error. Every run emits a
//! [`RunManifest`] as one JSON line on stderr, or to `--manifest FILE`.

mod commands;
mod input;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use input::{InputDigest, Inputs};

pub const EXIT_NO: u8 = 2;
pub const EXIT_INPUT: u8 = 3;
pub const EXIT_LIMIT: u8 = 4;
pub const EXIT_USAGE: u8 = 64;
pub const EXIT_INTERNAL: u8 = 70;

#[derive(Parser, Debug)]
#[command(name = "adicol", version, about = "Acyclic dicolouring of oriented graphs")]
struct Cli {
    /// Print a JSON result on stdout instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Also write a Graphviz rendering of the digraph and colouring to FILE.
    #[arg(long, global = true, value_name = "FILE")]
    dot: Option<PathBuf>,
    /// Write the run manifest to FILE instead of stderr.
    #[arg(long, global = true, value_name = "FILE")]
    manifest: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact dichromatic, acyclic dichromatic or chromatic number.
    Solve(SolveArgs),
    /// Check a colouring; prints a violating cycle when there is one.
    Verify(VerifyArgs),
    /// Generate a named construction as ODG with role lines.
    Construct(ConstructArgs),
    /// Decide acyclic 2-dicolourability of a tournament.
    Tour2col(Tour2colArgs),
    /// Constructive upper bounds.
    #[command(subcommand)]
    Bound(BoundCommand),
    /// Seeded random experiments.
    #[command(subcommand)]
    Experiment(ExperimentCommand),
    /// Convert between ODG, mat, UG and DOT.
    Convert(ConvertArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Param {
    /// Dichromatic number.
    Dic,
    /// Acyclic dichromatic number.
    Adic,
    /// Chromatic number of an undirected graph.
    Chi,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[arg(long, value_enum)]
    pub param: Param,
    #[arg(long, value_name = "FILE")]
    pub input: PathBuf,
    /// Decide colourability with K colours instead of minimising.
    #[arg(long)]
    pub k: Option<usize>,
    /// Give up after this many search nodes (exit 4).
    #[arg(long, value_name = "NODES")]
    pub limit: Option<u64>,
    #[arg(long, value_name = "W", default_value_t = 1)]
    pub parallel: usize,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_name = "FILE")]
    pub digraph: PathBuf,
    #[arg(long, value_name = "FILE")]
    pub colouring: PathBuf,
    /// Only require every class to be acyclic.
    #[arg(long)]
    pub plain: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    /// Transitive tournament TT_k.
    Tt,
    /// H_k on 3k + 2 vertices.
    Hero,
    /// Rotational tournament R_n (odd n).
    Rn,
    /// Two transitive tournaments of order k^2 joined by a matching.
    DoubleTt,
    /// Tournament with acyclic dichromatic number k and dichromatic number 2.
    Gap,
    /// D(G) for the UG given with --input, or for K_k.
    VertexSplit,
    /// Split digraph built from the digraph given with --input.
    SplitReduction,
    /// Next split digraph from --input D_k T_k.
    SplitLift,
    /// The 8-vertex planar gadget W.
    GadgetW,
    /// Directed triangle with W glued onto every arc.
    GadgetTriangle,
    /// 3-degenerate oriented graph over an independent set of size s.
    Ramsey3,
    /// H1 => H2 from --input H1 H2.
    Arrow,
    /// Delta(H1, H2, H3) from --input H1 H2 H3.
    Delta,
    /// S[Q_1, ..., Q_s] from --input S Q_1 ... Q_s.
    Substitute,
    /// Independent set on n vertices.
    Independent,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[arg(value_enum)]
    pub name: Construction,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub s: Option<usize>,
    #[arg(long, value_name = "FILE", num_args = 1..)]
    pub input: Vec<PathBuf>,
    /// Defaults to stdout.
    #[arg(long, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct Tour2colArgs {
    /// Defaults to stdin.
    #[arg(long, value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Cross-check the answer with exhaustive search and name a witness
    /// triangle for non-light inputs.
    #[arg(long)]
    pub certify: bool,
    /// Look for an (S, T)-colouring instead.
    #[arg(long, num_args = 2, value_names = ["S", "T"])]
    pub pair: Option<Vec<usize>>,
    #[arg(long, value_name = "W", default_value_t = 1)]
    pub parallel: usize,
}

#[derive(Subcommand, Debug)]
pub enum BoundCommand {
    /// Greedy acyclic matching of a tournament and its colouring.
    Matching {
        #[arg(long, value_name = "FILE")]
        input: PathBuf,
    },
    /// Acyclic 2-dicolouring of a 2-degenerate oriented graph.
    Degenerate2 {
        #[arg(long, value_name = "FILE")]
        input: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum ExperimentCommand {
    /// How often a random ell-subset of a random tournament is partitionable.
    Partitionable {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_name = "W", default_value_t = 1)]
        parallel: usize,
    },
    /// Frequency of a fixed block candidate against its closed form.
    Candidate {
        #[arg(long)]
        k2: usize,
        #[arg(long)]
        k3: usize,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Odg,
    Mat,
    Ug,
    Dot,
}

#[derive(Args, Debug)]
pub struct ConvertArgs {
    #[arg(long, value_name = "FILE")]
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub to: Target,
    /// Colouring to render as fill colours (DOT only).
    #[arg(long, value_name = "FILE")]
    pub colouring: Option<PathBuf>,
    /// Defaults to stdout.
    #[arg(long, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

#[derive(Serialize)]
struct RunManifest<'a> {
    command: Vec<String>,
    inputs: &'a [InputDigest],
    seed: Option<u64>,
    version: &'static str,
    wall_time_secs: f64,
    exit_code: u8,
    summary: serde_json::Value,
}

/// Diagnostics on stderr; a closed stderr is not worth a panic.
fn warn(msg: std::fmt::Arguments<'_>) {
    let _ = writeln!(std::io::stderr(), "{msg}");
}

fn emit_manifest(path: Option<&PathBuf>, manifest: &RunManifest<'_>) {
    let line = serde_json::to_string(manifest).expect("manifest serialises");
    match path {
        Some(p) => {
            if let Err(e) = std::fs::write(p, format!("{line}\n")) {
                warn(format_args!("adicol: cannot write manifest {}: {e}", p.display()));
            }
        }
        None => {
            let _ = writeln!(std::io::stderr(), "{line}");
        }
    }
}

fn main() -> ExitCode {
    let start = Instant::now();
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            if code != 0 {
                emit_manifest(
                    None,
                    &RunManifest {
                        command: argv,
                        inputs: &[],
                        seed: None,
                        version: env!("CARGO_PKG_VERSION"),
                        wall_time_secs: start.elapsed().as_secs_f64(),
                        exit_code: code,
                        summary: serde_json::json!({ "error": "usage" }),
                    },
                );
            }
            return ExitCode::from(code);
        }
    };

    let mut inputs = Inputs::default();
    let result = commands::run(&cli.command, cli.json, &mut inputs);
    let (code, summary) = match result {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            let written = stdout.write_all(outcome.stdout.as_bytes()).and_then(|_| stdout.flush());
            let dot = match (&cli.dot, &outcome.dot) {
                (Some(path), Some(text)) => std::fs::write(path, text).map_err(|e| (path.clone(), e)),
                _ => Ok(()),
            };
            match (written, dot) {
                (Ok(()), Ok(())) => (outcome.code, outcome.summary),
                (Err(e), _) => {
                    warn(format_args!("adicol: cannot write output: {e}"));
                    (EXIT_INPUT, serde_json::json!({ "error": e.to_string() }))
                }
                (_, Err((path, e))) => {
                    warn(format_args!("adicol: cannot write {}: {e}", path.display()));
                    (EXIT_INPUT, serde_json::json!({ "error": e.to_string() }))
                }
            }
        }
        Err(failure) => {
            warn(format_args!("adicol: {failure}"));
            (failure.exit_code(), serde_json::json!({ "error": failure.to_string() }))
        }
    };
    emit_manifest(
        cli.manifest.as_ref(),
        &RunManifest {
            command: argv,
            inputs: inputs.digests(),
            seed: commands::seed_of(&cli.command),
            version: env!("CARGO_PKG_VERSION"),
            wall_time_secs: start.elapsed().as_secs_f64(),
            exit_code: code,
            summary,
        },
    );
    ExitCode::from(code)
}
