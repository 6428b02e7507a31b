//! The rule record emitted by `mine` and `score`.
//!
//! Both commands funnel through [`build_record`], so scoring a rule by
//! hand reproduces the miner's row for that rule bit for bit. Numeric
//! fields are quantized to nine significant digits at construction;
//! serialization to TSV or JSON and back is then lossless.

use serde::{Deserialize, Serialize};
use sigrule_core::measures::MeasureReport;
use sigrule_core::redundancy::{self, RedundancyConfig};
use sigrule_core::significance::{self, SignificanceConfig};
use sigrule_core::{ContingencyTable, Event, Relation};

use crate::fmt::{q9, sig9};

/// One scored rule with its counts, measures, significance, and
/// redundancy statuses. Optional fields are measures that are undefined
/// on the rule's table (degenerate marginals and the like); they print as
/// `-` in TSV and `null` in JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RuleRecord {
    pub antecedent: String,
    pub consequent: String,
    pub n: u64,
    pub c11: u64,
    pub c10: u64,
    pub c01: u64,
    pub c00: u64,
    pub fr: f64,
    pub cf: Option<f64>,
    pub gamma: Option<f64>,
    pub t: Option<f64>,
    pub p_exact: Option<f64>,
    pub p_normal: Option<f64>,
    pub chi2: Option<f64>,
    pub phi: Option<f64>,
    pub j: Option<f64>,
    pub classic_redundant: Option<bool>,
    pub closed_redundant: Option<bool>,
    pub productive: Option<bool>,
    pub improvement: Option<f64>,
    pub superior: Option<bool>,
}

pub const TSV_COLUMNS: &[&str] = &[
    "antecedent",
    "consequent",
    "n",
    "c11",
    "c10",
    "c01",
    "c00",
    "fr",
    "cf",
    "gamma",
    "t",
    "p_exact",
    "p_normal",
    "chi2",
    "phi",
    "j",
    "classic_redundant",
    "closed_redundant",
    "productive",
    "improvement",
    "superior",
];

fn cell_float(v: Option<f64>) -> String {
    match v {
        Some(v) => sig9(v),
        None => "-".into(),
    }
}

fn cell_bool(v: Option<bool>) -> String {
    match v {
        Some(v) => v.to_string(),
        None => "-".into(),
    }
}

fn parse_float(field: &str, v: &str) -> Result<Option<f64>, String> {
    if v == "-" {
        return Ok(None);
    }
    v.parse().map(Some).map_err(|_| format!("bad {field} value `{v}`"))
}

fn parse_bool(field: &str, v: &str) -> Result<Option<bool>, String> {
    match v {
        "-" => Ok(None),
        "true" => Ok(Some(true)),
        "false" => Ok(Some(false)),
        other => Err(format!("bad {field} value `{other}`")),
    }
}

impl RuleRecord {
    pub fn tsv_header() -> String {
        TSV_COLUMNS.join("\t")
    }

    pub fn to_tsv_row(&self) -> String {
        [
            self.antecedent.clone(),
            self.consequent.clone(),
            self.n.to_string(),
            self.c11.to_string(),
            self.c10.to_string(),
            self.c01.to_string(),
            self.c00.to_string(),
            sig9(self.fr),
            cell_float(self.cf),
            cell_float(self.gamma),
            cell_float(self.t),
            cell_float(self.p_exact),
            cell_float(self.p_normal),
            cell_float(self.chi2),
            cell_float(self.phi),
            cell_float(self.j),
            cell_bool(self.classic_redundant),
            cell_bool(self.closed_redundant),
            cell_bool(self.productive),
            cell_float(self.improvement),
            cell_bool(self.superior),
        ]
        .join("\t")
    }

    pub fn from_tsv_row(line: &str) -> Result<RuleRecord, String> {
        let f: Vec<&str> = line.split('\t').collect();
        if f.len() != TSV_COLUMNS.len() {
            return Err(format!(
                "expected {} tab-separated fields, got {}",
                TSV_COLUMNS.len(),
                f.len()
            ));
        }
        let uint = |field: &str, v: &str| -> Result<u64, String> {
            v.parse().map_err(|_| format!("bad {field} value `{v}`"))
        };
        Ok(RuleRecord {
            antecedent: f[0].to_string(),
            consequent: f[1].to_string(),
            n: uint("n", f[2])?,
            c11: uint("c11", f[3])?,
            c10: uint("c10", f[4])?,
            c01: uint("c01", f[5])?,
            c00: uint("c00", f[6])?,
            fr: parse_float("fr", f[7])?.ok_or("fr cannot be `-`")?,
            cf: parse_float("cf", f[8])?,
            gamma: parse_float("gamma", f[9])?,
            t: parse_float("t", f[10])?,
            p_exact: parse_float("p_exact", f[11])?,
            p_normal: parse_float("p_normal", f[12])?,
            chi2: parse_float("chi2", f[13])?,
            phi: parse_float("phi", f[14])?,
            j: parse_float("j", f[15])?,
            classic_redundant: parse_bool("classic_redundant", f[16])?,
            closed_redundant: parse_bool("closed_redundant", f[17])?,
            productive: parse_bool("productive", f[18])?,
            improvement: parse_float("improvement", f[19])?,
            superior: parse_bool("superior", f[20])?,
        })
    }
}

/// Scores `x => y` on the relation and assembles the record. Measures or
/// statuses that are undefined for the table stay `None` rather than
/// being coerced to a number.
pub fn build_record(rel: &Relation, x: &Event, y: &Event) -> sigrule_core::Result<RuleRecord> {
    let ct = ContingencyTable::from_relation(rel, x, y)?;
    let m = MeasureReport::from_table(&ct);
    let sig = significance::evaluate(&ct, &SignificanceConfig::default()).ok();
    let verdict = redundancy::evaluate(rel, x, y, &RedundancyConfig::default()).ok();
    Ok(RuleRecord {
        antecedent: rel.render_event(x),
        consequent: rel.render_event(y),
        n: rel.n() as u64,
        c11: ct.c11() as u64,
        c10: ct.c10() as u64,
        c01: ct.c01() as u64,
        c00: ct.c00() as u64,
        fr: q9(m.fr),
        cf: m.cf.map(q9),
        gamma: m.gamma.map(q9),
        t: m.t.map(q9),
        p_exact: sig.as_ref().and_then(|s| s.p_exact).map(q9),
        p_normal: sig.as_ref().and_then(|s| s.p_normal).map(q9),
        chi2: m.chi2.map(q9),
        phi: m.phi.map(q9),
        j: m.j.map(q9),
        classic_redundant: verdict.as_ref().map(|v| v.classic.is_redundant()),
        closed_redundant: verdict.as_ref().map(|v| v.closed.is_redundant()),
        productive: verdict.as_ref().map(|v| v.productive),
        improvement: verdict.as_ref().map(|v| q9(v.improvement)),
        superior: verdict.as_ref().map(|v| v.superior_to_generalizations),
    })
}
