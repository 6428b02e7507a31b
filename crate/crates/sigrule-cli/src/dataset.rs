//! Dataset loading with extension-based format detection.

use std::path::Path;

use sigrule_core::Relation;

use crate::CliError;

/// Input format override. Without it, `.csv` means the 0/1 matrix form
/// and anything else the one-transaction-per-line form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum FormatArg {
    Matrix,
    Transactions,
}

fn detect(path: &Path) -> FormatArg {
    let csv = path
        .extension()
        .map(|e| e.eq_ignore_ascii_case("csv"))
        .unwrap_or(false);
    if csv {
        FormatArg::Matrix
    } else {
        FormatArg::Transactions
    }
}

pub fn load_relation(path: &Path, format: Option<FormatArg>) -> Result<Relation, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Internal(format!("cannot read {}: {e}", path.display())))?;
    let parsed = match format.unwrap_or_else(|| detect(path)) {
        FormatArg::Matrix => Relation::parse_csv_matrix(&text),
        FormatArg::Transactions => Relation::parse_transactions(&text),
    };
    parsed.map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}
