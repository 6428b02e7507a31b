//! `sigrule audit`: the type-1/type-2 error grid for the classical
//! measures against the `t >= K` ground truth.
//!
//! With no config it runs the built-in witness scenarios; a TOML config
//! can supply its own scenarios and cutoffs. The default output is the
//! summary grid (`+` marks a committed error type) with the witnesses
//! spelled out; `--json` emits the full report, which parses back
//! losslessly, and `--tsv` emits the evaluated rows.

use std::path::PathBuf;

use serde::Deserialize;

use sigrule_core::synth::{
    audit_measures, audit_measures_sampled, AuditConfig, AuditReport, MeasureAudit, Scenario,
    ScenarioRow, standard_scenarios,
};

use crate::{core_usage, CliError};

#[derive(clap::Args, Debug)]
pub struct AuditArgs {
    /// Scenario config (TOML); omitted, the built-in battery runs.
    pub config: Option<PathBuf>,

    /// Comma-separated measures to report: frcf,frgamma,chi2,phi,j.
    #[arg(long)]
    pub measures: Option<String>,

    /// Emit the full report as JSON.
    #[arg(long)]
    pub json: bool,

    /// Emit the evaluated rows as TSV.
    #[arg(long)]
    pub tsv: bool,

    /// Evaluate on data sampled from each scenario distribution instead
    /// of on the exact tables.
    #[arg(long)]
    pub empirical: bool,

    /// Sampling seed for --empirical.
    #[arg(long, default_value_t = 20240817)]
    pub seed: u64,

    /// Significance level; a config file's [audit] section overrides it.
    #[arg(long, default_value_t = 2.0)]
    pub k: f64,

    /// Data size for the built-in scenarios.
    #[arg(long, default_value_t = 10_000)]
    pub n: u64,
}

/// `[audit]` section of the config: every cutoff optional, falling back
/// to the defaults.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct AuditOverrides {
    k: Option<f64>,
    chi2_cutoff: Option<f64>,
    phi_cutoff: Option<f64>,
    min_fr: Option<f64>,
    min_cf: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct AuditFile {
    #[serde(default)]
    audit: AuditOverrides,
    #[serde(default, rename = "scenario")]
    scenarios: Vec<Scenario>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum MeasureName {
    Frcf,
    Frgamma,
    Chi2,
    Phi,
    J,
}

impl MeasureName {
    const ALL: [MeasureName; 5] = [
        MeasureName::Frcf,
        MeasureName::Frgamma,
        MeasureName::Chi2,
        MeasureName::Phi,
        MeasureName::J,
    ];

    fn label(self) -> &'static str {
        match self {
            MeasureName::Frcf => "fr&cf",
            MeasureName::Frgamma => "fr&gamma",
            MeasureName::Chi2 => "chi2",
            MeasureName::Phi => "phi",
            MeasureName::J => "J",
        }
    }

    fn parse(tok: &str) -> Result<Self, CliError> {
        match tok.trim().to_ascii_lowercase().as_str() {
            "frcf" => Ok(MeasureName::Frcf),
            "frgamma" => Ok(MeasureName::Frgamma),
            "chi2" => Ok(MeasureName::Chi2),
            "phi" => Ok(MeasureName::Phi),
            "j" => Ok(MeasureName::J),
            other => Err(CliError::Usage(format!(
                "unknown measure `{other}`; expected frcf, frgamma, chi2, phi, or j"
            ))),
        }
    }

    fn audit(self, report: &AuditReport) -> &MeasureAudit {
        match self {
            MeasureName::Frcf => &report.frcf,
            MeasureName::Frgamma => &report.frgamma,
            MeasureName::Chi2 => &report.chi2,
            MeasureName::Phi => &report.phi,
            MeasureName::J => &report.j,
        }
    }
}

fn load_config(path: &PathBuf) -> Result<AuditFile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Internal(format!("cannot read {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn mark(b: bool) -> char {
    if b {
        '+'
    } else {
        '-'
    }
}

fn opt_cell(v: Option<f64>) -> String {
    match v {
        Some(v) => v.to_string(),
        None => "-".into(),
    }
}

fn row_tsv(row: &ScenarioRow) -> String {
    [
        row.scenario.clone(),
        row.n.to_string(),
        row.rule.clone(),
        row.measures.fr.to_string(),
        opt_cell(row.measures.cf),
        opt_cell(row.measures.gamma),
        opt_cell(row.measures.t),
        opt_cell(row.measures.chi2),
        opt_cell(row.measures.phi),
        opt_cell(row.measures.j),
        row.floor.to_string(),
        row.significant.to_string(),
        row.frcf_accept.to_string(),
        row.frgamma_accept.to_string(),
        row.chi2_accept.to_string(),
        row.phi_accept.to_string(),
    ]
    .join("\t")
}

pub fn run(args: &AuditArgs) -> Result<i32, CliError> {
    if args.json && args.tsv {
        return Err(CliError::Usage("pick one of --json and --tsv".into()));
    }
    let selected: Vec<MeasureName> = match &args.measures {
        None => MeasureName::ALL.to_vec(),
        Some(list) => list
            .split(',')
            .map(MeasureName::parse)
            .collect::<Result<Vec<_>, _>>()?,
    };

    let file = match &args.config {
        Some(path) => load_config(path)?,
        None => AuditFile::default(),
    };
    let cfg = AuditConfig {
        k: file.audit.k.unwrap_or(args.k),
        chi2_cutoff: file.audit.chi2_cutoff.unwrap_or(AuditConfig::default().chi2_cutoff),
        phi_cutoff: file.audit.phi_cutoff.unwrap_or(AuditConfig::default().phi_cutoff),
        min_fr: file.audit.min_fr.unwrap_or(AuditConfig::default().min_fr),
        min_cf: file.audit.min_cf.unwrap_or(AuditConfig::default().min_cf),
    };
    let scenarios = if file.scenarios.is_empty() {
        standard_scenarios(cfg.k, args.n)
    } else {
        file.scenarios
    };

    let report = if args.empirical {
        audit_measures_sampled(&scenarios, &cfg, args.seed)
    } else {
        audit_measures(&scenarios, &cfg)
    }
    .map_err(core_usage)?;

    if args.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
        return Ok(0);
    }
    if args.tsv {
        println!(
            "scenario\tn\trule\tfr\tcf\tgamma\tt\tchi2\tphi\tj\tfloor\tsignificant\tfrcf_accept\tfrgamma_accept\tchi2_accept\tphi_accept"
        );
        for row in &report.rows {
            println!("{}", row_tsv(row));
        }
        return Ok(0);
    }

    println!(
        "# scenarios={} rows={} mode={} k={}",
        scenarios.len(),
        report.rows.len(),
        if args.empirical { "empirical" } else { "analytic" },
        cfg.k
    );
    println!("measure\ttype1\ttype2");
    for m in &selected {
        let a = m.audit(&report);
        println!("{}\t{}\t{}", m.label(), mark(a.type1), mark(a.type2));
    }
    println!("# witnesses");
    for m in &selected {
        for w in &m.audit(&report).witnesses {
            println!("# {}: {}", m.label(), w);
        }
    }
    Ok(0)
}
