//! `sigrule`: mine and evaluate statistically significant association
//! rules over binary data.
//!
//! Subcommands: `mine` (search a dataset), `score` (evaluate one rule),
//! `bounds` (closed-form frequency/chi-squared bounds), `contour`
//! (significance contour grids), `audit` (error-type grid for the
//! classical measures on synthetic distributions).
//!
//! Exit codes: 0 success with results, 3 success with an empty result,
//! 2 usage error, 1 internal error.

use clap::{Parser, Subcommand};

use sigrule_cli::{cmd_audit, cmd_bounds, cmd_contour, cmd_mine, cmd_score, CliError};

#[derive(Parser, Debug)]
#[command(
    name = "sigrule",
    version,
    about = "Mine and evaluate statistically significant association rules"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Search a dataset for rules with t >= K, ranked by t.
    Mine(cmd_mine::MineArgs),
    /// Evaluate one explicitly given rule.
    Score(cmd_score::ScoreArgs),
    /// Closed-form frequency and chi-squared bounds.
    Bounds(cmd_bounds::BoundsArgs),
    /// Significance contour grids for plotting.
    Contour(cmd_contour::ContourArgs),
    /// Error-type audit of the classical measures.
    Audit(cmd_audit::AuditArgs),
}

/// Die quietly when the downstream pipe closes (`sigrule ... | head`),
/// like any other line-oriented tool, instead of panicking on EPIPE.
#[cfg(unix)]
fn reset_sigpipe() {
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn reset_sigpipe() {}

fn main() {
    reset_sigpipe();
    let cli = Cli::parse();
    let outcome = match &cli.cmd {
        Cmd::Mine(args) => cmd_mine::run(args),
        Cmd::Score(args) => cmd_score::run(args),
        Cmd::Bounds(args) => cmd_bounds::run(args),
        Cmd::Contour(args) => cmd_contour::run(args),
        Cmd::Audit(args) => cmd_audit::run(args),
    };
    let code = match outcome {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(CliError::Internal(msg)) => {
            eprintln!("error: {msg}");
            1
        }
    };
    std::process::exit(code);
}
