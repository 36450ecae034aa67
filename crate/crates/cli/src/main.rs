//! `psc-lab`: construct, inspect and simulate monomial codes.
//!
//! Exit codes: 0 success, 2 invalid input, 3 infeasible design, 4 I/O failure.

mod commands;
mod manifest;
mod parse;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

#[derive(Debug, Parser, Serialize)]
#[command(name = "psc-lab", version, about = "Partially symmetric monomial code laboratory")]
pub struct Cli {
    /// Where to write the run manifest (defaults to `<out>.manifest.json` when `--out` is given).
    #[arg(long, global = true, value_name = "PATH")]
    pub manifest: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Build a code from design parameters.
    Construct(ConstructArgs),
    /// Tabulate the dimension lower bound against the projected dimension.
    Bound(BoundArgs),
    /// Estimate frame error rates on the erasure channel.
    Simulate(SimulateArgs),
    /// Report the projection profile and symmetry of a code file.
    Verify(VerifyArgs),
    /// Compare target projections up to relabelling of variables.
    Conjecture(ConjectureArgs),
    /// Re-run the command recorded in a manifest.
    Replay(ReplayArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct ConstructArgs {
    #[arg(short)]
    pub m: usize,
    #[arg(short)]
    pub t: usize,
    #[arg(short)]
    pub k: usize,
    /// Degree cap; defaults to `m`.
    #[arg(short)]
    pub d: Option<usize>,
    /// Code file to write; the trace goes to `<out>.trace`.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct BoundArgs {
    #[arg(short)]
    pub m: usize,
    /// Comma separated symmetry orders.
    #[arg(short, conflicts_with = "t_all", required_unless_present = "t_all")]
    pub t: Option<String>,
    /// Every order `1..=m`.
    #[arg(long)]
    pub t_all: bool,
    /// Degree cap; defaults to `m`.
    #[arg(short)]
    pub d: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct SimulateArgs {
    /// Code file (repeatable).
    #[arg(long = "code", value_name = "FILE")]
    pub codes: Vec<PathBuf>,
    /// Reed-Muller code RM(r, m) (repeatable).
    #[arg(long, num_args = 2, value_names = ["R", "M"], action = clap::ArgAction::Append)]
    pub rm: Vec<usize>,
    /// Constructed code from `m=..,t=..,k=..[,d=..]` (repeatable).
    #[arg(long = "spec", value_name = "SPEC")]
    pub specs: Vec<String>,
    /// Erasure-channel polar code with `2^M` positions and `K` information bits (repeatable).
    #[arg(long, num_args = 2, value_names = ["M", "K"], action = clap::ArgAction::Append)]
    pub polar: Vec<usize>,
    /// Redesign polar codes at every simulated erasure probability.
    #[arg(long, conflicts_with = "polar_design")]
    pub polar_adaptive: bool,
    /// Fixed design erasure probability for polar codes.
    #[arg(long, value_name = "EPS")]
    pub polar_design: Option<f64>,
    /// Erasure probabilities: `0.4`, `0.3,0.4` or `start:stop:step`.
    #[arg(short = 'e', long = "epsilon")]
    pub epsilon: String,
    #[arg(short = 'N', long, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(short, long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, env = "PSC_LAB_WORKERS", default_value_t = 1)]
    pub workers: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    pub file: PathBuf,
    /// Comma separated orders to test; defaults to every `1..=m`.
    #[arg(short)]
    pub t: Option<String>,
}

#[derive(Debug, Args, Serialize)]
pub struct ConjectureArgs {
    /// Construct the code from `m=..,t=..,k=..[,d=..]`.
    #[arg(long, conflicts_with_all = ["code", "sweep"])]
    pub spec: Option<String>,
    /// Read the code from a file; needs `-t`.
    #[arg(long, requires = "t", conflicts_with = "sweep")]
    pub code: Option<PathBuf>,
    #[arg(short)]
    pub t: Option<usize>,
    /// Check every construction that needed a subgraph step.
    #[arg(long)]
    pub sweep: bool,
    #[arg(long, default_value_t = 5)]
    pub max_m: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct ReplayArgs {
    pub manifest_file: PathBuf,
    /// Redirect the primary output of the recorded command.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<psc_core::Error>() {
            return match e {
                psc_core::Error::Unachievable { .. } => 3,
                _ => 2,
            };
        }
        if cause.downcast_ref::<std::io::Error>().is_some() {
            return 4;
        }
    }
    2
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::run(cli, &argv[1..]) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
