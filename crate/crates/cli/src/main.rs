//! `dold`: JSON front end for the dold-core computations.
//!
//! Exit codes: 0 success, 2 parse error, 3 domain error, 4 resource limit.
//! Errors are written to stderr as `{"error": {"kind", "message"}}`.
//! `DOLD_THREADS` sets the worker-thread count.

mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dold_core::{Error, ErrorKind};

#[derive(Parser, Debug)]
#[command(name = "dold", version, about = "Free group actions on Dold manifolds, computed exactly")]
pub struct Cli {
    /// Append a human-readable table after the JSON.
    #[arg(long, global = true)]
    pub pretty: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Poincaré series and duality check of a space.
    Betti {
        space: String,
    },
    /// Lefschetz number of a sign automorphism, cross-checked by traces.
    Lefschetz {
        space: String,
        /// xi signs, a slash, then lambda signs, e.g. "-+/++".
        #[arg(long, allow_hyphen_values = true)]
        signs: String,
        #[arg(long, default_value_t = dold_core::lefschetz::DEFAULT_TRACE_LIMIT)]
        trace_limit: usize,
    },
    /// Exhaustive free-rank search over sign subgroups.
    Maxrank {
        space: String,
        #[arg(long, default_value_t = dold_core::lefschetz::DEFAULT_SEARCH_BUDGET)]
        budget: u64,
    },
    /// Free p-rank table value for mod 2 cohomologically trivial actions.
    Frk {
        space: String,
        #[arg(long)]
        prime: u64,
    },
    /// Total Betti number against 2 to the rank bound.
    Carlsson {
        space: String,
    },
    /// Conjectured free 2-rank of a product of Dold manifolds.
    Conjecture {
        space: String,
    },
    /// Spectral sequences of the orbit-space fibrations.
    Ss {
        #[command(subcommand)]
        case: SsCase,
    },
    /// Nilpotency index of a class, bounding the co-index.
    Coindex(CoindexArgs),
    /// Sampled checks of the explicit actions.
    Involution {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = dold_core::involutions::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = dold_core::involutions::DEFAULT_TOL)]
        tol: f64,
    },
    /// Search for integer matrices A = I mod 2 with A^p = I.
    Rigidity {
        #[arg(long)]
        size: usize,
        #[arg(long)]
        prime: u32,
        #[arg(long)]
        bound: i64,
        #[arg(long, default_value_t = dold_core::lefschetz::DEFAULT_RIGIDITY_BUDGET)]
        budget: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum SsCase {
    /// Fiber P(m, n) over RP^infinity, m odd.
    Case1 {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        cap: Option<u32>,
    },
    /// Fiber S^m x CP^n over B(Z2 x Z2), n odd.
    Case2 {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        /// alpha_1,alpha_2 in {0,1}.
        #[arg(long, default_value = "0,0", value_parser = parse_pair)]
        alpha: [bool; 2],
        /// beta_1,beta_2 in {0,1}.
        #[arg(long, default_value = "0,0", value_parser = parse_pair)]
        beta: [bool; 2],
        /// Correction term h in F2[x, y, z] (degrees 1, 1, 4).
        #[arg(long)]
        h: Option<String>,
        #[arg(long)]
        cap: Option<u32>,
    },
}

#[derive(Args, Debug)]
pub struct CoindexArgs {
    /// JSON presentation file.
    #[arg(long, requires = "class", conflicts_with = "dold")]
    pub algebra: Option<PathBuf>,
    /// Class whose powers are examined, e.g. "x".
    #[arg(long)]
    pub class: Option<String>,
    /// Shortcut: the orbit-space algebra of P(m, n) for the given case.
    #[arg(long, num_args = 2, value_names = ["M", "N"], requires = "case")]
    pub dold: Option<Vec<u32>>,
    #[arg(long)]
    pub case: Option<u32>,
}

fn parse_pair(s: &str) -> Result<[bool; 2], String> {
    let bit = |t: &str| match t.trim() {
        "0" => Ok(false),
        "1" => Ok(true),
        other => Err(format!("expected 0 or 1, got `{other}`")),
    };
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected two comma-separated bits, got `{s}`"))?;
    Ok([bit(a)?, bit(b)?])
}

fn kind_name(kind: ErrorKind) -> (&'static str, u8) {
    match kind {
        ErrorKind::Parse => ("parse", 2),
        ErrorKind::Domain => ("domain", 3),
        ErrorKind::Resource => ("resource", 4),
    }
}

fn fail(e: &Error) -> ExitCode {
    let (kind, code) = kind_name(e.kind());
    eprintln!("{}", report::error_json(kind, &e.to_string()));
    ExitCode::from(code)
}

fn configure_threads() -> Result<(), Error> {
    if let Ok(v) = std::env::var("DOLD_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("DOLD_THREADS must be a positive integer, got `{v}`")))?;
        if n == 0 {
            return Err(Error::Parse("DOLD_THREADS must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::Domain(e.to_string()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind as K;
            if matches!(e.kind(), K::DisplayHelp | K::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let message = e.render().to_string();
            eprintln!("{}", report::error_json("parse", message.trim()));
            return ExitCode::from(2);
        }
    };
    if let Err(e) = configure_threads() {
        return fail(&e);
    }
    match commands::run(&cli.command) {
        Ok(report) => {
            let mut text = report.to_json();
            text.push('\n');
            if cli.pretty {
                text.push('\n');
                text.push_str(&report.table());
            }
            // A closed pipe on stdout is not an error worth reporting.
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => fail(&e),
    }
}
