//! `sigrule score`: evaluate one explicitly given rule on a dataset.
//!
//! The record comes from the same construction path as `mine`, so scoring
//! a rule the miner reported reproduces its row exactly.

use std::path::PathBuf;

use crate::dataset::{self, FormatArg};
use crate::record::{build_record, RuleRecord};
use crate::{rulespec, CliError};

#[derive(clap::Args, Debug)]
pub struct ScoreArgs {
    /// Dataset file; `.csv` is read as a 0/1 matrix, anything else as
    /// one transaction per line.
    pub dataset: PathBuf,

    /// Rule to score, e.g. `a,b=>c` or `!x=>!y`.
    #[arg(long)]
    pub rule: String,

    /// Force the dataset format instead of detecting it by extension.
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,

    /// Emit one JSON object instead of TSV.
    #[arg(long)]
    pub json: bool,
}

pub fn run(args: &ScoreArgs) -> Result<i32, CliError> {
    let rel = dataset::load_relation(&args.dataset, args.format)?;
    let (x, y) = rulespec::parse_rule(&rel, &args.rule)?;
    let rec = build_record(&rel, &x, &y).map_err(|e| CliError::Internal(e.to_string()))?;
    if args.json {
        println!("{}", serde_json::to_string_pretty(&rec).expect("record serializes"));
    } else {
        println!("{}", RuleRecord::tsv_header());
        println!("{}", rec.to_tsv_row());
    }
    Ok(0)
}
