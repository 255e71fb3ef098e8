//! `hext`: batch JSON front end for the heisenberg-ext toolkit.
//!
//! Every command prints one JSON report that embeds the tool version and the
//! seed. Exit codes: 0 when every check passes, 1 on a domain failure (the
//! report is still written), 2 on unreadable or malformed input.

// `!(x > 0.0)` deliberately rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

/// Seed used when `--seed` is not given, so runs are reproducible.
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Parser)]
#[command(name = "hext", version, about = "Dilation extensions of the Heisenberg group: validation, invariants, classification and representation checks")]
struct Cli {
    /// RNG seed for every sampled check.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check commutativity and the closedness conditions of a parameter file.
    Validate {
        #[arg(long)]
        params: PathBuf,
    },
    /// Compute the isomorphism invariants of a parameter file.
    Invariants {
        #[arg(long)]
        params: PathBuf,
    },
    /// Decide isomorphism of two parameter files, optionally with a certificate.
    Classify {
        #[arg(long)]
        params: PathBuf,
        #[arg(long = "params-b")]
        params_b: PathBuf,
        /// JSON `{"A": [[..],[..]], "S": [[..], ..]}`.
        #[arg(long)]
        certificate: Option<PathBuf>,
        /// Relative tolerance for certificate residuals.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Pairwise separation report over the catalog of class representatives.
    Catalog {
        /// JSON parameter choices per catalog row; defaults when omitted.
        #[arg(long)]
        choices: Option<PathBuf>,
    },
    /// Randomized group-axiom checks against the matrix realization.
    Fuzz {
        #[arg(long)]
        params: PathBuf,
        /// Number of random element triples.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Representation, intertwining, unitarity and support checks.
    Repcheck {
        #[arg(long)]
        params: PathBuf,
        /// Sample points per probe.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Pointwise tolerance.
        #[arg(long)]
        tol: Option<f64>,
        /// Skip the quadrature norm checks.
        #[arg(long)]
        skip_norms: bool,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Invariants { .. } => "invariants",
            Command::Classify { .. } => "classify",
            Command::Catalog { .. } => "catalog",
            Command::Fuzz { .. } => "fuzz",
            Command::Repcheck { .. } => "repcheck",
        }
    }
}

/// Result of a command that read its input successfully.
pub struct Outcome {
    pub pass: bool,
    pub report: Value,
}

/// Unreadable or malformed input.
#[derive(Debug)]
pub struct InputError(pub String);

fn dispatch(cli: &Cli) -> Result<Outcome, InputError> {
    let seed = cli.seed;
    match &cli.command {
        Command::Validate { params } => commands::validate(params),
        Command::Invariants { params } => commands::invariants(params),
        Command::Classify {
            params,
            params_b,
            certificate,
            tol,
        } => commands::classify(params, params_b, certificate.as_deref(), *tol),
        Command::Catalog { choices } => commands::catalog(choices.as_deref()),
        Command::Fuzz { params, samples, tol } => commands::fuzz(params, *samples, *tol, seed),
        Command::Repcheck {
            params,
            samples,
            tol,
            skip_norms,
        } => commands::repcheck(params, *samples, *tol, *skip_norms, seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match dispatch(&cli) {
        Ok(o) => o,
        Err(InputError(msg)) => {
            eprintln!("hext: {msg}");
            return ExitCode::from(2);
        }
    };
    let envelope = json!({
        "tool": "hext",
        "version": env!("CARGO_PKG_VERSION"),
        "command": cli.command.name(),
        "seed": cli.seed,
        "pass": outcome.pass,
        "report": outcome.report,
    });
    let text = serde_json::to_string_pretty(&envelope).expect("reports are plain JSON values") + "\n";
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("hext: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if outcome.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
