//! `sigrule mine`: search a dataset for significant rules and print them
//! ranked by the `t` statistic.

use std::path::PathBuf;

use serde::Serialize;

use sigrule_core::miner::{self, Bonferroni, ConsequentPolicy, LiteralPolicy, MineConfig, MinFrequency};

use crate::dataset::{self, FormatArg};
use crate::fmt::{q9, sig9};
use crate::record::{build_record, RuleRecord};
use crate::{core_usage, CliError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum LiteralsArg {
    /// Positive attribute values only (market-basket convention).
    Positive,
    /// Positive and negated values.
    All,
}

#[derive(clap::Args, Debug)]
pub struct MineArgs {
    /// Dataset file; `.csv` is read as a 0/1 matrix, anything else as
    /// one transaction per line.
    pub dataset: PathBuf,

    /// Significance level: keep rules with t >= K.
    #[arg(long, default_value_t = 2.0)]
    pub k: f64,

    /// Maximum literals in a rule, antecedent plus consequent.
    #[arg(long = "max-len", default_value_t = 4)]
    pub max_len: usize,

    /// Explicit frequency floor in (0,1]. Without it the safe floor is
    /// derived from K and the rarest admitted literal, which loses no
    /// rule at level K.
    #[arg(long = "min-fr")]
    pub min_fr: Option<f64>,

    /// Which literals join the search.
    #[arg(long, value_enum, default_value_t = LiteralsArg::Positive)]
    pub literals: LiteralsArg,

    /// Restrict consequents to one literal, e.g. `y` or `!y`.
    #[arg(long)]
    pub consequent: Option<String>,

    /// Bonferroni adjustment: the bare flag widens the level to
    /// sqrt(m)*K with m = rules actually tested; an explicit value fixes m.
    #[arg(long, num_args = 0..=1)]
    pub bonferroni: Option<Option<u64>>,

    /// Force the dataset format instead of detecting it by extension.
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,

    /// Emit one JSON document instead of TSV.
    #[arg(long)]
    pub json: bool,

    /// Worker threads; 0 means all available cores. Falls back to the
    /// SIGRULE_THREADS environment variable, then to 0.
    #[arg(long)]
    pub threads: Option<usize>,
}

fn resolve_threads(flag: Option<usize>) -> Result<usize, CliError> {
    if let Some(t) = flag {
        return Ok(t);
    }
    match std::env::var("SIGRULE_THREADS") {
        Ok(s) => s.trim().parse().map_err(|_| {
            CliError::Usage(format!("SIGRULE_THREADS must be a nonnegative integer, got `{s}`"))
        }),
        Err(_) => Ok(0),
    }
}

#[derive(Serialize)]
struct MineReport {
    n: u64,
    attributes: usize,
    k: f64,
    effective_k: f64,
    floor: f64,
    floor_exceeds_one: bool,
    candidates_tested: u64,
    rules: Vec<RuleRecord>,
}

pub fn run(args: &MineArgs) -> Result<i32, CliError> {
    let rel = dataset::load_relation(&args.dataset, args.format)?;

    if let Some(fr) = args.min_fr {
        if !(fr > 0.0 && fr <= 1.0) {
            return Err(CliError::Usage(format!("--min-fr must be in (0,1], got {fr}")));
        }
    }
    let consequent = match &args.consequent {
        Some(spec) => ConsequentPolicy::Fixed(crate::rulespec::parse_literal(&rel, spec)?),
        None => ConsequentPolicy::AnySingleAttribute,
    };
    let cfg = MineConfig {
        k: args.k,
        max_len: args.max_len,
        min_fr: match args.min_fr {
            Some(v) => MinFrequency::Explicit(v),
            None => MinFrequency::Auto,
        },
        consequent,
        literals: match args.literals {
            LiteralsArg::Positive => LiteralPolicy::PositiveOnly,
            LiteralsArg::All => LiteralPolicy::All,
        },
        bonferroni: match args.bonferroni {
            None => Bonferroni::Off,
            Some(None) => Bonferroni::Auto,
            Some(Some(m)) => Bonferroni::Fixed(m),
        },
        threads: resolve_threads(args.threads)?,
    };

    let out = miner::mine(&rel, &cfg).map_err(core_usage)?;
    if out.floor_exceeds_one {
        eprintln!(
            "warning: the frequency floor {:.3} exceeds 1; no rule can reach t >= {} on n = {} rows",
            out.floor,
            cfg.k,
            rel.n()
        );
    }

    let mut records = Vec::with_capacity(out.rules.len());
    for rule in &out.rules {
        records.push(
            build_record(&rel, &rule.antecedent, &rule.consequent)
                .map_err(|e| CliError::Internal(e.to_string()))?,
        );
    }

    let report = MineReport {
        n: rel.n() as u64,
        attributes: rel.attribute_count(),
        k: q9(cfg.k),
        effective_k: q9(out.effective_k),
        floor: q9(out.floor),
        floor_exceeds_one: out.floor_exceeds_one,
        candidates_tested: out.candidates_tested,
        rules: records,
    };

    if args.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        println!(
            "# n={} attributes={} k={} effective_k={} floor={} floor_exceeds_one={} candidates_tested={} rules={}",
            report.n,
            report.attributes,
            sig9(report.k),
            sig9(report.effective_k),
            sig9(report.floor),
            report.floor_exceeds_one,
            report.candidates_tested,
            report.rules.len()
        );
        println!("{}", RuleRecord::tsv_header());
        for rec in &report.rules {
            println!("{}", rec.to_tsv_row());
        }
    }

    Ok(if report.rules.is_empty() { 3 } else { 0 })
}
