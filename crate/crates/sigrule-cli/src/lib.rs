//! Implementation of the `sigrule` binary: argument types, record
//! construction, and the command bodies. Split out as a library so the
//! integration tests can parse command output with the same code that
//! produced it.

pub mod cmd_audit;
pub mod cmd_bounds;
pub mod cmd_contour;
pub mod cmd_mine;
pub mod cmd_score;
pub mod dataset;
pub mod fmt;
pub mod record;
pub mod rulespec;

/// CLI-level failure, split by exit code.
#[derive(Debug)]
pub enum CliError {
    /// Caller mistake: bad flags, malformed input, unknown attribute.
    Usage(String),
    /// Unexpected failure: unreadable file, violated internal expectation.
    Internal(String),
}

/// Library errors surfaced by a command whose inputs came straight from
/// the user are usage errors; anything else indicates a bug and exits 1.
pub fn core_usage(e: sigrule_core::Error) -> CliError {
    use sigrule_core::Error::*;
    match e {
        Load(_) | UnknownAttribute(_) | InvalidArgument(_) => CliError::Usage(e.to_string()),
        Undefined(_) | NotApplicable(_) => CliError::Internal(e.to_string()),
    }
}
