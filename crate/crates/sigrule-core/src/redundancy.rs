//! Post-processing filters that relate a rule to its generalizations.
//!
//! A generalization of `X => Y` drops literals from the antecedent
//! (`Z` strictly inside `X`). Several classical notions of "redundant"
//! compare a rule against its generalizations, and they disagree about
//! which rule of a related pair deserves to survive. This module
//! implements the checks side by side so their behaviour can be compared:
//!
//! * frequency-equality redundancy (equal joint support with some
//!   generalization) - a compactness notion that discards the *more*
//!   confident specialization;
//! * closed-rule redundancy (equal support and equal joint with a rule
//!   whose consequent may shrink) - equal frequency and confidence, yet
//!   the lift of the discarded rule can be higher;
//! * productivity and improvement - keep a rule only when every
//!   generalization, including the trivial rule with empty antecedent
//!   and confidence `P(Y)`, has strictly smaller confidence;
//! * the superiority condition - an exact characterization of
//!   `t(X=>Y) > t(Z=>Y)` in terms of the confidence-gain ratio, with a
//!   cheaper one-sided prune derived from it.
//!
//! These are post-processing checks over already-mined rules; they are
//! deliberately not wired into the frequent-set search, where pruning on
//! improvement can cut branches that still hold significant rules.

use crate::error::{Error, Result};
use crate::measures::ContingencyTable;
use crate::relation::{Event, Relation};
use crate::significance::t_statistic;

/// Relative tolerance for real-valued comparisons. Ties within this
/// tolerance count as "not strictly greater", so a boundary case is
/// never pruned in the unsafe direction.
const REL_TOL: f64 = 1e-12;

/// `a > b` with a relative tie band: near-equal values compare false.
fn strictly_greater(a: f64, b: f64) -> bool {
    a > b + REL_TOL * a.abs().max(b.abs())
}

/// Outcome of one redundancy check.
#[derive(Debug, Clone, PartialEq)]
pub enum CheckOutcome {
    Minimal,
    /// Dominated by the given generalization rule.
    Redundant { by_antecedent: Event, by_consequent: Event },
}

impl CheckOutcome {
    pub fn is_redundant(&self) -> bool {
        matches!(self, CheckOutcome::Redundant { .. })
    }
}

/// Thresholds for the verdict aggregation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RedundancyConfig {
    /// Minimum improvement a rule must reach in `improvement_pass`
    /// (the productivity flag itself always uses strict `imp > 0`).
    pub min_imp: f64,
}

impl Default for RedundancyConfig {
    fn default() -> Self {
        RedundancyConfig { min_imp: 0.0 }
    }
}

/// All checks for one rule, with witnesses.
#[derive(Debug, Clone, PartialEq)]
pub struct RedundancyVerdict {
    pub classic: CheckOutcome,
    pub closed: CheckOutcome,
    /// True when every strict generalization (including the empty
    /// antecedent) has strictly smaller confidence.
    pub productive: bool,
    /// A violating generalization when `productive` is false.
    pub productive_witness: Option<Event>,
    /// Confidence of the rule minus the best generalization confidence.
    pub improvement: f64,
    /// `improvement >= min_imp`.
    pub improvement_pass: bool,
    /// True when the rule is more significant than every strict
    /// generalization towards the same consequent.
    pub superior_to_generalizations: bool,
    /// A generalization at least as significant, when one exists.
    pub superiority_witness: Option<Event>,
}

fn rule_counts(rel: &Relation, x: &Event, y: &Event) -> Result<(u64, u64)> {
    let joint = rel.support(&x.union(y)?)?;
    let body = rel.support(x)?;
    Ok((joint, body))
}

/// Frequency-equality redundancy: redundant iff some nonempty `Z`
/// strictly inside `X` satisfies `m(X,Y) = m(Z,Y)` as exact counts.
///
/// When this fires with `P(X) < P(Z)`, the discarded rule is the more
/// confident one - the check is about representation size, not quality.
pub fn check_classic_redundancy(rel: &Relation, x: &Event, y: &Event) -> Result<CheckOutcome> {
    let (joint, _) = rule_counts(rel, x, y)?;
    for z in x.strict_subsets() {
        if z.is_empty() {
            continue;
        }
        let (zjoint, _) = rule_counts(rel, &z, y)?;
        if zjoint == joint {
            return Ok(CheckOutcome::Redundant {
                by_antecedent: z,
                by_consequent: y.clone(),
            });
        }
    }
    Ok(CheckOutcome::Minimal)
}

/// The candidate generalizations used for the closed-rule check when the
/// caller does not supply any: every rule `X' => Y'` with `X'` a nonempty
/// strict subset of `X` and `Y'` a nonempty subset of `Y`.
pub fn default_closed_candidates(x: &Event, y: &Event) -> Vec<(Event, Event)> {
    let mut out = Vec::new();
    for xp in x.strict_subsets() {
        if xp.is_empty() {
            continue;
        }
        for yp in subsets_nonempty(y) {
            out.push((xp.clone(), yp));
        }
    }
    out
}

fn subsets_nonempty(e: &Event) -> Vec<Event> {
    let mut subs = e.strict_subsets();
    subs.retain(|s| !s.is_empty());
    subs.push(e.clone());
    subs
}

/// Closed-rule redundancy: redundant iff some candidate `X' => Y'` with
/// `X'` strictly inside `X` and `Y'` inside `Y` has exactly the same
/// support (`m(X) = m(X')`) and the same joint (`m(X,Y) = m(X',Y')`).
///
/// Such a pair shares frequency and confidence, but the specialized
/// rule's lift is strictly higher whenever `P(Y) < P(Y')`.
pub fn check_closed_redundancy(
    rel: &Relation,
    x: &Event,
    y: &Event,
    candidates: &[(Event, Event)],
) -> Result<CheckOutcome> {
    let (joint, body) = rule_counts(rel, x, y)?;
    for (xp, yp) in candidates {
        if xp.is_empty() || !xp.is_subset_of(x) || xp == x {
            return Err(Error::invalid(format!(
                "closed-redundancy candidate antecedent {} is not a nonempty strict subset of {}",
                rel.render_event(xp),
                rel.render_event(x)
            )));
        }
        if yp.is_empty() || !yp.is_subset_of(y) {
            return Err(Error::invalid(format!(
                "closed-redundancy candidate consequent {} is not a nonempty subset of {}",
                rel.render_event(yp),
                rel.render_event(y)
            )));
        }
        let (pjoint, pbody) = rule_counts(rel, xp, yp)?;
        if pjoint == joint && pbody == body {
            return Ok(CheckOutcome::Redundant {
                by_antecedent: xp.clone(),
                by_consequent: yp.clone(),
            });
        }
    }
    Ok(CheckOutcome::Minimal)
}

/// Productivity: `cf(X => Y) > cf(Z => Y)` for every strict subset `Z`
/// of `X`, including the empty antecedent whose confidence is `P(Y)`.
/// Returns the first violating `Z` (most general first) as witness.
///
/// Confidences are compared as exact float quotients of integer counts;
/// rationally equal confidences divide to identical floats, so equality
/// is decided exactly and counts as a violation.
pub fn check_productive(
    rel: &Relation,
    x: &Event,
    y: &Event,
) -> Result<(bool, Option<Event>)> {
    let (joint, body) = rule_counts(rel, x, y)?;
    if body == 0 {
        return Err(Error::undefined(format!(
            "confidence of {} => {} with zero antecedent support",
            rel.render_event(x),
            rel.render_event(y)
        )));
    }
    let cf = joint as f64 / body as f64;
    for z in x.strict_subsets() {
        let (zjoint, zbody) = rule_counts(rel, &z, y)?;
        // zbody >= body > 0: support can only grow when literals drop.
        let zcf = zjoint as f64 / zbody as f64;
        if cf <= zcf {
            return Ok((false, Some(z)));
        }
    }
    Ok((true, None))
}

/// Improvement: the rule's confidence minus the best confidence among
/// all strict generalizations (the empty antecedent contributes
/// `P(Y)`). Positive exactly when the rule is productive.
pub fn improvement(rel: &Relation, x: &Event, y: &Event) -> Result<f64> {
    let (joint, body) = rule_counts(rel, x, y)?;
    if body == 0 {
        return Err(Error::undefined(format!(
            "confidence of {} => {} with zero antecedent support",
            rel.render_event(x),
            rel.render_event(y)
        )));
    }
    let cf = joint as f64 / body as f64;
    let mut best = f64::NEG_INFINITY;
    for z in x.strict_subsets() {
        let (zjoint, zbody) = rule_counts(rel, &z, y)?;
        best = best.max(zjoint as f64 / zbody as f64);
    }
    Ok(cf - best)
}

/// Shared validation for the pairwise significance conditions: the two
/// tables must describe `X => Y` and `Z => Y` over the same data with
/// `Z` inside `X`. Returns `(cf_x, cf_z, py, pqz, pxpy, pzpy)`.
fn pair_parameters(
    rule: &ContingencyTable,
    general: &ContingencyTable,
) -> Result<(f64, f64, f64, f64, f64, f64)> {
    let n = rule.n();
    if (general.n() - n).abs() > 1e-9 * n {
        return Err(Error::invalid("rule and generalization cover different n"));
    }
    if (general.my() - rule.my()).abs() > 1e-9 * n.max(1.0) {
        return Err(Error::invalid(
            "rule and generalization have different consequent support",
        ));
    }
    let slack = 1e-9 * n.max(1.0);
    if rule.mx() > general.mx() + slack || rule.c11() > general.c11() + slack {
        return Err(Error::invalid(
            "generalization support must dominate the rule's (Z inside X)",
        ));
    }
    if rule.mx() <= 0.0 {
        return Err(Error::undefined("rule antecedent has zero support"));
    }
    let py = rule.py();
    if !(py > 0.0 && py < 1.0) {
        return Err(Error::undefined(format!(
            "consequent probability {py} is degenerate"
        )));
    }
    let px = rule.px();
    let pz = general.px();
    let cf_x = rule.c11() / rule.mx();
    let cf_z = general.c11() / general.mx();
    let pqz = px / pz;
    let pxpy = px * py;
    let pzpy = pz * py;
    if pxpy >= 1.0 || pzpy >= 1.0 {
        return Err(Error::undefined("null probability reaches 1"));
    }
    // The ratio compares confidence gains over P(Y); it only carries
    // meaning when the generalization itself points the same way.
    if cf_z - py <= REL_TOL * py {
        return Err(Error::not_applicable(format!(
            "generalization confidence {cf_z} does not exceed P(Y) = {py}"
        )));
    }
    Ok((cf_x, cf_z, py, pqz, pxpy, pzpy))
}

/// Exact condition for `t(X => Y) > t(Z => Y)`:
///
/// `(P(Y|X) - P(Y)) / (P(Y|Z) - P(Y)) > sqrt(1 - P(X)P(Y)) / sqrt(P(Q|Z)(1 - P(Z)P(Y)))`
///
/// where `Q = X \ Z` and `P(Q|Z) = P(X)/P(Z)`. Boundary cases (the two
/// sides within relative 1e-12) return `false`: a tie is not strict
/// superiority. Errors with `NotApplicable` when `P(Y|Z) <= P(Y)`.
pub fn superiority_condition_tables(
    rule: &ContingencyTable,
    general: &ContingencyTable,
) -> Result<bool> {
    let (cf_x, cf_z, py, pqz, pxpy, pzpy) = pair_parameters(rule, general)?;
    let lhs = (cf_x - py) / (cf_z - py);
    let rhs = (1.0 - pxpy).sqrt() / (pqz * (1.0 - pzpy)).sqrt();
    Ok(strictly_greater(lhs, rhs))
}

/// One-sided prune derived from the superiority condition: when
///
/// `(P(Y|X) - P(Y)) / (P(Y|Z) - P(Y)) <= 1 / sqrt(P(Q|Z))`
///
/// the rule is guaranteed not to be more significant than its
/// generalization, without touching `1 - P(X)P(Y)` terms. Ties prune
/// (the specialization still cannot strictly win). The converse fails:
/// a `false` here does not mean the rule is superior.
pub fn prune_condition_tables(rule: &ContingencyTable, general: &ContingencyTable) -> Result<bool> {
    let (cf_x, cf_z, py, pqz, _, _) = pair_parameters(rule, general)?;
    let lhs = (cf_x - py) / (cf_z - py);
    let bound = 1.0 / pqz.sqrt();
    Ok(!strictly_greater(lhs, bound))
}

/// Event-level wrapper for [`superiority_condition_tables`].
pub fn superiority_condition(
    rel: &Relation,
    x: &Event,
    y: &Event,
    z: &Event,
) -> Result<bool> {
    let (rule, general) = pair_tables(rel, x, y, z)?;
    superiority_condition_tables(&rule, &general)
}

/// Event-level wrapper for [`prune_condition_tables`].
pub fn prune_condition(rel: &Relation, x: &Event, y: &Event, z: &Event) -> Result<bool> {
    let (rule, general) = pair_tables(rel, x, y, z)?;
    prune_condition_tables(&rule, &general)
}

fn pair_tables(
    rel: &Relation,
    x: &Event,
    y: &Event,
    z: &Event,
) -> Result<(ContingencyTable, ContingencyTable)> {
    if !z.is_subset_of(x) || z == x {
        return Err(Error::invalid(format!(
            "generalization {} must be a strict subset of {}",
            rel.render_event(z),
            rel.render_event(x)
        )));
    }
    Ok((
        ContingencyTable::from_relation(rel, x, y)?,
        ContingencyTable::from_relation(rel, z, y)?,
    ))
}

/// Runs every check for one rule and aggregates the verdict.
///
/// The superiority aggregate asks whether the rule is more significant
/// than each strict generalization `Z => Y`: by the exact condition when
/// `P(Y|Z) > P(Y)`, and by direct comparison of `t` values otherwise
/// (outside that regime the generalization's `t` is not positive, so the
/// direct comparison is cheap and unambiguous).
pub fn evaluate(
    rel: &Relation,
    x: &Event,
    y: &Event,
    cfg: &RedundancyConfig,
) -> Result<RedundancyVerdict> {
    if x.is_empty() {
        return Err(Error::invalid("rule antecedent must be nonempty"));
    }
    let classic = check_classic_redundancy(rel, x, y)?;
    let closed = check_closed_redundancy(rel, x, y, &default_closed_candidates(x, y))?;
    let (productive, productive_witness) = check_productive(rel, x, y)?;
    let imp = improvement(rel, x, y)?;

    let rule_ct = ContingencyTable::from_relation(rel, x, y)?;
    let t_rule = t_statistic(&rule_ct)?;
    let mut superior = true;
    let mut witness = None;
    for z in x.strict_subsets() {
        let gen_ct = ContingencyTable::from_relation(rel, &z, y)?;
        let more_significant = match superiority_condition_tables(&rule_ct, &gen_ct) {
            Ok(b) => b,
            Err(Error::NotApplicable(_)) => {
                let t_gen = t_statistic(&gen_ct)?;
                strictly_greater(t_rule, t_gen)
            }
            Err(e) => return Err(e),
        };
        if !more_significant {
            superior = false;
            witness = Some(z);
            break;
        }
    }

    Ok(RedundancyVerdict {
        classic,
        closed,
        productive,
        productive_witness,
        improvement: imp,
        improvement_pass: imp >= cfg.min_imp,
        superior_to_generalizations: superior,
        superiority_witness: witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::{AttrId, Literal};

    const TOL: f64 = 1e-12;

    fn ev(ids: &[usize]) -> Event {
        Event::new(ids.iter().map(|&i| Literal::pos(AttrId(i))).collect()).unwrap()
    }

    /// a and b are copies; c holds on a subset of them.
    fn duplicate_column() -> Relation {
        Relation::parse_csv_matrix(
            "a,b,c\n1,1,1\n1,1,1\n1,1,0\n0,0,1\n0,0,0\n0,0,0\n",
        )
        .unwrap()
    }

    #[test]
    fn duplicate_column_is_classic_redundant() {
        let rel = duplicate_column();
        let out = check_classic_redundancy(&rel, &ev(&[0, 1]), &ev(&[2])).unwrap();
        match out {
            CheckOutcome::Redundant { by_antecedent, by_consequent } => {
                assert_eq!(by_antecedent, ev(&[0]));
                assert_eq!(by_consequent, ev(&[2]));
            }
            CheckOutcome::Minimal => panic!("expected redundant"),
        }
    }

    #[test]
    fn strictly_smaller_joint_is_minimal() {
        // Every generalization's joint with c is strictly larger.
        let rel = Relation::parse_csv_matrix(
            "a,b,c\n1,1,1\n1,1,1\n1,0,1\n0,1,1\n1,0,0\n0,1,0\n0,0,1\n0,0,0\n",
        )
        .unwrap();
        let out = check_classic_redundancy(&rel, &ev(&[0, 1]), &ev(&[2])).unwrap();
        assert_eq!(out, CheckOutcome::Minimal);
    }

    #[test]
    fn classic_redundancy_discards_the_more_confident_rule() {
        // a: rows 1-5, b: rows 1-4, c: rows 1-3. The joint a,b,c equals
        // the joint a,c, but P(ab) < P(a), so the specialization is the
        // more confident of the pair.
        let rel = Relation::parse_csv_matrix(
            "a,b,c\n1,1,1\n1,1,1\n1,1,1\n1,1,0\n1,0,0\n0,0,0\n",
        )
        .unwrap();
        let x = ev(&[0, 1]);
        let z = ev(&[0]);
        let y = ev(&[2]);
        let out = check_classic_redundancy(&rel, &x, &y).unwrap();
        assert!(out.is_redundant());
        let cf_x = rel.support(&x.union(&y).unwrap()).unwrap() as f64
            / rel.support(&x).unwrap() as f64;
        let cf_z = rel.support(&z.union(&y).unwrap()).unwrap() as f64
            / rel.support(&z).unwrap() as f64;
        assert!(rel.support(&x).unwrap() < rel.support(&z).unwrap());
        assert!(cf_x > cf_z, "equal joints with smaller body mean higher confidence");
    }

    #[test]
    fn closed_check_detects_equal_support_and_joint() {
        let rel = duplicate_column();
        let x = ev(&[0, 1]);
        let y = ev(&[2]);
        let out =
            check_closed_redundancy(&rel, &x, &y, &default_closed_candidates(&x, &y)).unwrap();
        assert!(out.is_redundant());
    }

    #[test]
    fn closed_check_requires_equal_support() {
        // Joints with c agree, but both single-attribute bodies are
        // strictly larger than ab's.
        let rel = Relation::parse_csv_matrix(
            "a,b,c\n1,1,1\n1,1,1\n1,0,0\n0,1,0\n",
        )
        .unwrap();
        let x = ev(&[0, 1]);
        let y = ev(&[2]);
        let out =
            check_closed_redundancy(&rel, &x, &y, &default_closed_candidates(&x, &y)).unwrap();
        assert_eq!(out, CheckOutcome::Minimal);
    }

    #[test]
    fn closed_redundant_pair_can_hide_higher_lift() {
        // X = {a,b}, Y = {c,d}; generalization X' = {a}, Y' = {c}.
        // Supports and joints agree exactly, but P(c) > P(c,d), so the
        // specialized rule has strictly larger lift.
        let rel = Relation::parse_csv_matrix(
            "a,b,c,d\n1,1,1,1\n1,1,1,1\n1,1,1,1\n0,0,1,0\n0,0,1,0\n0,0,0,0\n0,0,0,0\n0,0,0,0\n",
        )
        .unwrap();
        let x = ev(&[0, 1]);
        let y = ev(&[2, 3]);
        let xp = ev(&[0]);
        let yp = ev(&[2]);
        let out = check_closed_redundancy(&rel, &x, &y, &[(xp.clone(), yp.clone())]).unwrap();
        assert!(out.is_redundant());
        let ct = ContingencyTable::from_relation(&rel, &x, &y).unwrap();
        let ct_p = ContingencyTable::from_relation(&rel, &xp, &yp).unwrap();
        assert!((crate::measures::frequency(&ct) - crate::measures::frequency(&ct_p)).abs() < TOL);
        let gamma = crate::measures::degree_of_dependence(&ct).unwrap();
        let gamma_p = crate::measures::degree_of_dependence(&ct_p).unwrap();
        assert!(gamma > gamma_p + TOL, "lift differs: {gamma} vs {gamma_p}");
    }

    #[test]
    fn invalid_closed_candidates_are_rejected() {
        let rel = duplicate_column();
        let x = ev(&[0, 1]);
        let y = ev(&[2]);
        // Candidate antecedent equal to X: not strict.
        assert!(check_closed_redundancy(&rel, &x, &y, &[(x.clone(), y.clone())]).is_err());
        // Candidate consequent outside Y.
        assert!(
            check_closed_redundancy(&rel, &x, &y, &[(ev(&[0]), ev(&[1]))]).is_err()
        );
    }

    /// a: rows 1-4; d: rows 1,3; c: rows 1,2. Adding d to the
    /// antecedent leaves the confidence at exactly 1/2.
    fn independent_extension() -> Relation {
        Relation::parse_csv_matrix(
            "a,c,d\n1,1,1\n1,1,0\n1,0,1\n1,0,0\n0,0,0\n0,0,0\n0,0,0\n0,0,0\n",
        )
        .unwrap()
    }

    #[test]
    fn independent_extension_is_non_productive() {
        let rel = independent_extension();
        let x = ev(&[0, 2]); // a, d
        let y = ev(&[1]); // c
        let (productive, witness) = check_productive(&rel, &x, &y).unwrap();
        assert!(!productive);
        assert_eq!(witness, Some(ev(&[0])), "the unchanged-confidence parent");
        assert_eq!(improvement(&rel, &x, &y).unwrap(), 0.0);
    }

    #[test]
    fn confidence_increasing_chain_is_productive() {
        let rel = Relation::parse_csv_matrix(
            "a,b,c\n1,1,1\n1,1,1\n1,0,0\n0,1,0\n0,0,0\n1,1,0\n",
        )
        .unwrap();
        let x = ev(&[0, 1]);
        let y = ev(&[2]);
        let (productive, witness) = check_productive(&rel, &x, &y).unwrap();
        assert!(productive);
        assert_eq!(witness, None);
        let imp = improvement(&rel, &x, &y).unwrap();
        assert!((imp - (2.0 / 3.0 - 0.5)).abs() < TOL);
    }

    #[test]
    fn non_productive_rule_is_not_more_significant_than_witness() {
        let rel = independent_extension();
        let x = ev(&[0, 2]);
        let y = ev(&[1]);
        let (_, witness) = check_productive(&rel, &x, &y).unwrap();
        let z = witness.unwrap();
        let t_x = t_statistic(&ContingencyTable::from_relation(&rel, &x, &y).unwrap()).unwrap();
        let t_z = t_statistic(&ContingencyTable::from_relation(&rel, &z, &y).unwrap()).unwrap();
        assert!(t_x <= t_z + TOL);
    }

    #[test]
    fn singleton_antecedent_compares_against_base_rate() {
        let rel = Relation::parse_csv_matrix(
            "a,b,c\n1,1,1\n1,1,1\n1,0,0\n0,1,0\n0,0,0\n1,1,0\n",
        )
        .unwrap();
        // cf(a => c) = 1/2, P(c) = 1/3.
        let imp = improvement(&rel, &ev(&[0]), &ev(&[2])).unwrap();
        assert!((imp - (0.5 - 1.0 / 3.0)).abs() < TOL);
    }

    #[test]
    fn improvement_matches_bitmask_enumeration() {
        // Independent oracle: enumerate generalizations by bitmask over
        // the antecedent literals rather than through strict_subsets.
        let rel = Relation::parse_csv_matrix(
            "a,b,c,d,e\n1,1,0,1,1\n1,0,1,1,0\n0,1,1,0,1\n1,1,1,1,1\n0,0,0,1,0\n1,1,0,0,1\n0,1,0,1,1\n1,0,1,0,1\n1,1,1,0,0\n0,0,1,1,1\n",
        )
        .unwrap();
        let x = ev(&[0, 1, 3]);
        let y = ev(&[4]);
        let lits = x.literals().to_vec();
        let mut best = f64::NEG_INFINITY;
        for mask in 0u32..(1 << lits.len()) - 1 {
            let z: Event = (0..lits.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| lits[i])
                .collect();
            let joint = rel.support(&z.union(&y).unwrap()).unwrap();
            let body = rel.support(&z).unwrap();
            best = best.max(joint as f64 / body as f64);
        }
        let joint = rel.support(&x.union(&y).unwrap()).unwrap();
        let body = rel.support(&x).unwrap();
        let expect = joint as f64 / body as f64 - best;
        assert_eq!(improvement(&rel, &x, &y).unwrap(), expect);
    }

    #[test]
    fn identical_tables_sit_on_the_boundary() {
        let ct = ContingencyTable::from_counts(30, 20, 20, 30).unwrap();
        assert_eq!(superiority_condition_tables(&ct, &ct).unwrap(), false);
        assert_eq!(prune_condition_tables(&ct, &ct).unwrap(), true);
    }

    #[test]
    fn superiority_matches_direct_t_comparison() {
        // X => Y concentrates most of Z's successes on a smaller body.
        let rule = ContingencyTable::from_counts(30, 10, 20, 40).unwrap();
        let general = ContingencyTable::from_counts(35, 25, 15, 25).unwrap();
        assert!(superiority_condition_tables(&rule, &general).unwrap());
        let t_rule = t_statistic(&rule).unwrap();
        let t_general = t_statistic(&general).unwrap();
        assert!(t_rule > t_general);
        // A rule tied with itself is not strictly superior.
        assert_eq!(superiority_condition_tables(&general, &general).unwrap(), false);
    }

    #[test]
    fn prune_never_fires_on_a_strictly_superior_rule() {
        let rule = ContingencyTable::from_counts(30, 10, 20, 40).unwrap();
        let general = ContingencyTable::from_counts(35, 25, 15, 25).unwrap();
        assert_eq!(prune_condition_tables(&rule, &general).unwrap(), false);
    }

    #[test]
    fn prune_is_one_sided() {
        // Constructed so the gain ratio lies strictly between the prune
        // bound 1/sqrt(P(Q|Z)) and the exact threshold: neither superior
        // nor prunable.
        let rule = ContingencyTable::from_real_counts(1625.0, 875.0, 3375.0, 4125.0).unwrap();
        let general = ContingencyTable::from_real_counts(3000.0, 2000.0, 2000.0, 3000.0).unwrap();
        assert_eq!(superiority_condition_tables(&rule, &general).unwrap(), false);
        assert_eq!(prune_condition_tables(&rule, &general).unwrap(), false);
        let t_rule = t_statistic(&rule).unwrap();
        let t_general = t_statistic(&general).unwrap();
        assert!(t_rule < t_general, "the exact test still knows the ordering");
    }

    #[test]
    fn negative_generalization_gain_is_not_applicable() {
        // cf(Z => Y) = 0.4 < P(Y) = 0.5.
        let rule = ContingencyTable::from_counts(20, 5, 30, 45).unwrap();
        let general = ContingencyTable::from_counts(20, 30, 30, 20).unwrap();
        match superiority_condition_tables(&rule, &general) {
            Err(Error::NotApplicable(_)) => {}
            other => panic!("expected NotApplicable, got {other:?}"),
        }
    }

    #[test]
    fn mismatched_pair_is_rejected() {
        // Rule support exceeding the generalization's cannot be Z inside X.
        let rule = ContingencyTable::from_counts(40, 30, 10, 20).unwrap();
        let general = ContingencyTable::from_counts(30, 10, 20, 40).unwrap();
        assert!(superiority_condition_tables(&rule, &general).is_err());
        // Different n.
        let other_n = ContingencyTable::from_counts(30, 10, 20, 99).unwrap();
        assert!(superiority_condition_tables(&other_n, &general).is_err());
    }

    #[test]
    fn event_level_wrappers_agree_with_tables() {
        let rel = duplicate_column();
        let x = ev(&[0, 1]);
        let y = ev(&[2]);
        let z = ev(&[0]);
        let via_events = superiority_condition(&rel, &x, &y, &z).unwrap();
        let rule = ContingencyTable::from_relation(&rel, &x, &y).unwrap();
        let general = ContingencyTable::from_relation(&rel, &z, &y).unwrap();
        assert_eq!(via_events, superiority_condition_tables(&rule, &general).unwrap());
        // Identical columns give identical counts: boundary, not superior,
        // but safe to prune.
        assert!(!via_events);
        assert!(prune_condition(&rel, &x, &y, &z).unwrap());
        // Non-subset generalizations are rejected up front.
        assert!(superiority_condition(&rel, &x, &y, &ev(&[2])).is_err());
    }

    #[test]
    fn evaluate_aggregates_all_checks() {
        let rel = duplicate_column();
        let verdict = evaluate(&rel, &ev(&[0, 1]), &ev(&[2]), &RedundancyConfig::default())
            .unwrap();
        assert!(verdict.classic.is_redundant());
        assert!(verdict.closed.is_redundant());
        assert!(!verdict.productive, "duplicate literal adds no confidence");
        assert_eq!(verdict.improvement, 0.0);
        assert!(verdict.improvement_pass, "min_imp = 0 accepts a zero improvement");
        assert!(!verdict.superior_to_generalizations);
        assert!(verdict.superiority_witness.is_some());

        // A genuinely sharper rule passes everything: ab => c is perfect
        // while each parent only reaches 3/4.
        let rel = Relation::parse_csv_matrix(
            "a,b,c\n1,1,1\n1,1,1\n1,0,1\n0,1,1\n1,0,0\n0,1,0\n0,0,1\n0,0,0\n",
        )
        .unwrap();
        let verdict = evaluate(&rel, &ev(&[0, 1]), &ev(&[2]), &RedundancyConfig::default())
            .unwrap();
        assert!(!verdict.classic.is_redundant());
        assert!(!verdict.closed.is_redundant());
        assert!(verdict.productive);
        assert!(verdict.superior_to_generalizations);
        assert_eq!(verdict.superiority_witness, None);
        assert!(verdict.improvement > 0.0);
    }
}
