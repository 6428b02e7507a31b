//! Frequent-set enumeration, rule generation, and significance ranking.
//!
//! The search runs depth-first over a lexicographic prefix tree of
//! literals, pruning with the antimonotone frequency floor. By default the
//! floor is not a user guess: it is the safe threshold
//! [`crate::significance::safe_min_frequency`] derived from the requested
//! level `K` and the smallest admitted literal probability, below which no
//! rule can reach `t >= K`. Mining with the auto floor therefore finds
//! *every* rule at level `K`, not just the frequent ones.
//!
//! Each frequent set of size >= 2 is split into candidate rules
//! (antecedent => single-literal consequent by default), scored with the
//! full measure report, and ranked by `t` descending.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::measures::{ContingencyTable, MeasureReport};
use crate::relation::{Event, Literal, Relation};
use crate::significance::safe_min_frequency;

/// A scored candidate rule `antecedent => consequent`.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    pub antecedent: Event,
    pub consequent: Event,
    pub ct: ContingencyTable,
    pub scores: MeasureReport,
    /// Copy of `scores.t`; rules with undefined `t` are never constructed.
    pub t: f64,
}

/// How the frequency floor is chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MinFrequency {
    /// Derive the safe floor from `K` and the admitted literals.
    Auto,
    /// User-supplied floor in (0, 1].
    Explicit(f64),
}

/// Which consequents are generated from a frequent set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConsequentPolicy {
    /// Every single literal of the set in turn (the `|Y| = 1` setting).
    AnySingleAttribute,
    /// Only the given literal; sets not containing it yield no rules.
    Fixed(Literal),
}

/// Which literals participate in the search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LiteralPolicy {
    /// Positive attribute values only - the market-basket convention.
    PositiveOnly,
    /// Positive and negated values; appropriate for demographic-style
    /// data where absence is as meaningful as presence.
    All,
}

/// Multiple-testing adjustment applied at the ranking step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bonferroni {
    Off,
    /// `m` = the number of candidate rules actually tested in this run.
    Auto,
    Fixed(u64),
}

/// Mining parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MineConfig {
    /// Required significance level (the `t` threshold).
    pub k: f64,
    /// Maximum number of literals in a frequent set (antecedent plus
    /// consequent); clamped to the attribute count.
    pub max_len: usize,
    pub min_fr: MinFrequency,
    pub consequent: ConsequentPolicy,
    pub literals: LiteralPolicy,
    pub bonferroni: Bonferroni,
    /// Worker threads for the search: 1 = sequential, 0 = library
    /// default. The output is identical for every setting.
    pub threads: usize,
}

impl Default for MineConfig {
    fn default() -> Self {
        MineConfig {
            k: 2.0,
            max_len: 4,
            min_fr: MinFrequency::Auto,
            consequent: ConsequentPolicy::AnySingleAttribute,
            literals: LiteralPolicy::PositiveOnly,
            bonferroni: Bonferroni::Off,
            threads: 1,
        }
    }
}

/// One frequent event with its support count.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequentSet {
    pub event: Event,
    pub support: u64,
}

/// Result of the frequent-set phase.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequentSets {
    pub sets: Vec<FrequentSet>,
    /// The frequency floor that was applied.
    pub floor: f64,
    /// True when the floor exceeds 1, i.e. no set can qualify at this
    /// level and the result is empty by construction.
    pub floor_exceeds_one: bool,
}

/// Result of the full mine / generate / rank pipeline.
#[derive(Debug, Clone, PartialEq)]
pub struct MineOutcome {
    /// Significant rules, ranked by `t` descending.
    pub rules: Vec<Rule>,
    pub floor: f64,
    pub floor_exceeds_one: bool,
    /// Candidate rules that received a significance test.
    pub candidates_tested: u64,
    /// Candidates dropped because `t` was undefined on their table.
    pub undefined_excluded: u64,
    /// The level actually applied after the Bonferroni adjustment.
    pub effective_k: f64,
}

/// Literals eligible for the search: those with nonzero support under the
/// chosen policy, sorted by (attribute, value). A zero-probability
/// literal can head no rule (its `t` is undefined), so it is dropped here
/// and excluded from the floor's `p_min`.
pub fn admitted_literals(rel: &Relation, policy: LiteralPolicy) -> Vec<Literal> {
    let n = rel.n() as u64;
    let mut out = Vec::new();
    for a in 0..rel.attribute_count() {
        let pos = Literal::pos(crate::relation::AttrId(a));
        let support = rel
            .support(&Event::single(pos))
            .expect("attribute index is in range");
        if policy == LiteralPolicy::All && support < n {
            out.push(pos.negated());
        }
        if support > 0 {
            out.push(pos);
        }
    }
    out.sort();
    out
}

fn floor_for(rel: &Relation, cfg: &MineConfig, admitted: &[Literal]) -> Result<f64> {
    match cfg.min_fr {
        MinFrequency::Explicit(f) => {
            if !(f > 0.0 && f <= 1.0) {
                return Err(Error::invalid(format!(
                    "explicit minimum frequency must be in (0,1], got {f}"
                )));
            }
            Ok(f)
        }
        MinFrequency::Auto => {
            let n = rel.n() as u64;
            let mut p_min = f64::INFINITY;
            for &l in admitted {
                let p = rel.probability(&Event::single(l))?;
                if p > 0.0 {
                    p_min = p_min.min(p);
                }
            }
            if !p_min.is_finite() || p_min >= 1.0 {
                // No literal with probability in (0,1): nothing can form a
                // dependence, signalled as an unsatisfiable floor.
                return Ok(f64::INFINITY);
            }
            safe_min_frequency(p_min.max(1.0 / n as f64), n, cfg.k)
        }
    }
}

/// Enumerates every event over admitted literals with probability at
/// least the floor and at most `max_len` literals, depth-first in
/// lexicographic order.
pub fn mine_frequent_sets(rel: &Relation, cfg: &MineConfig) -> Result<FrequentSets> {
    if cfg.max_len == 0 {
        return Err(Error::invalid("max_len must be at least 1"));
    }
    let max_len = cfg.max_len.min(rel.attribute_count());
    let admitted = admitted_literals(rel, cfg.literals);
    let floor = floor_for(rel, cfg, &admitted)?;
    if floor > 1.0 {
        return Ok(FrequentSets {
            sets: Vec::new(),
            floor,
            floor_exceeds_one: true,
        });
    }

    let branch = |i: usize| -> Result<Vec<FrequentSet>> {
        let mut out = Vec::new();
        let mut prefix = vec![admitted[i]];
        descend(rel, &admitted, i, &mut prefix, floor, max_len, &mut out)?;
        Ok(out)
    };

    let branches: Vec<Vec<FrequentSet>> = if cfg.threads == 1 {
        (0..admitted.len()).map(branch).collect::<Result<_>>()?
    } else {
        run_pool(cfg.threads, || {
            (0..admitted.len())
                .into_par_iter()
                .map(branch)
                .collect::<Result<_>>()
        })?
    };
    Ok(FrequentSets {
        sets: branches.into_iter().flatten().collect(),
        floor,
        floor_exceeds_one: false,
    })
}

/// Emits the current prefix if frequent and recurses over literals of
/// strictly later attributes. The prefix's last literal is `admitted[i]`
/// and has not been counted yet.
fn descend(
    rel: &Relation,
    admitted: &[Literal],
    i: usize,
    prefix: &mut Vec<Literal>,
    floor: f64,
    max_len: usize,
    out: &mut Vec<FrequentSet>,
) -> Result<()> {
    let event = Event::new(prefix.clone()).expect("prefix literals have distinct attributes");
    let support = rel.support(&event)?;
    if (support as f64) / (rel.n() as f64) < floor {
        // Antimonotone: no superset can reach the floor either.
        return Ok(());
    }
    out.push(FrequentSet { event, support });
    if prefix.len() < max_len {
        let last_attr = prefix.last().expect("prefix is nonempty").attr;
        for (j, &lit) in admitted.iter().enumerate().skip(i + 1) {
            if lit.attr <= last_attr {
                continue;
            }
            prefix.push(lit);
            descend(rel, admitted, j, prefix, floor, max_len, out)?;
            prefix.pop();
        }
    }
    Ok(())
}

/// Splits frequent sets into scored candidate rules. Rules whose `t` is
/// undefined (degenerate null) are excluded and counted.
pub fn generate_rules(
    sets: &FrequentSets,
    rel: &Relation,
    cfg: &MineConfig,
) -> Result<(Vec<Rule>, u64, u64)> {
    let mut rules = Vec::new();
    let mut tested = 0u64;
    let mut undefined = 0u64;
    for set in &sets.sets {
        if set.event.len() < 2 {
            continue;
        }
        let consequents: Vec<Literal> = match cfg.consequent {
            ConsequentPolicy::AnySingleAttribute => set.event.literals().to_vec(),
            ConsequentPolicy::Fixed(lit) => {
                if set.event.contains(lit) {
                    vec![lit]
                } else {
                    continue;
                }
            }
        };
        for head in consequents {
            let consequent = Event::single(head);
            let antecedent = set.event.minus(&consequent);
            let ct = ContingencyTable::from_relation(rel, &antecedent, &consequent)?;
            let scores = MeasureReport::from_table(&ct);
            match scores.t {
                Some(t) => {
                    tested += 1;
                    rules.push(Rule {
                        antecedent,
                        consequent,
                        ct,
                        scores,
                        t,
                    });
                }
                None => undefined += 1,
            }
        }
    }
    Ok((rules, tested, undefined))
}

/// Keeps rules with `t >= k_effective`, sorted by `t` descending.
/// Ties break deterministically: smaller antecedent first, then
/// lexicographic literal order.
pub fn rank_significant(mut rules: Vec<Rule>, k_effective: f64) -> Vec<Rule> {
    rules.retain(|r| r.t >= k_effective);
    rules.sort_by(|a, b| {
        b.t.partial_cmp(&a.t)
            .expect("t is always finite on retained rules")
            .then_with(|| a.antecedent.len().cmp(&b.antecedent.len()))
            .then_with(|| a.antecedent.cmp(&b.antecedent))
            .then_with(|| a.consequent.cmp(&b.consequent))
    });
    rules
}

/// The full pipeline: frequent sets, candidate rules, Bonferroni-adjusted
/// ranking.
pub fn mine(rel: &Relation, cfg: &MineConfig) -> Result<MineOutcome> {
    let sets = mine_frequent_sets(rel, cfg)?;
    let (rules, tested, undefined) = generate_rules(&sets, rel, cfg)?;
    let effective_k = match cfg.bonferroni {
        Bonferroni::Off => cfg.k,
        Bonferroni::Auto => {
            if tested > 0 {
                (tested as f64).sqrt() * cfg.k
            } else {
                cfg.k
            }
        }
        Bonferroni::Fixed(m) => (m as f64).sqrt() * cfg.k,
    };
    Ok(MineOutcome {
        rules: rank_significant(rules, effective_k),
        floor: sets.floor,
        floor_exceeds_one: sets.floor_exceeds_one,
        candidates_tested: tested,
        undefined_excluded: undefined,
        effective_k,
    })
}

/// Runs `f` inside a rayon pool of the requested size (0 = rayon's
/// default). The `threads == 1` case never reaches here; the caller runs
/// the branches as a plain loop instead.
fn run_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("failed to build thread pool")
        .install(f)
}
