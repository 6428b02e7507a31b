//! Contingency tables and the descriptive rule measures.
//!
//! Everything here is purely arithmetical: given a 2x2 table (or, for the
//! set-level measures, a [`JointDistribution`]) each function either
//! returns the measure or reports that it is undefined on this input.
//! Undefined is a real answer - a degenerate marginal makes chi-squared
//! meaningless, and silently returning `0.0` or NaN would later be
//! indistinguishable from "independent". See [`crate::significance`] for
//! the significance statistics built on the same tables.
//!
//! Counts are stored as `f64` so that idealized tables ("counts" `n * p`
//! from an exact distribution) flow through the same code as integer
//! counts from data; integer counts up to 2^53 are represented exactly.

use crate::error::{Error, Result};
use crate::joint::JointDistribution;
use crate::relation::{Event, Relation};
use crate::significance;

/// A 2x2 contingency table for rule `X => Y`:
///
/// |          | Y        | not Y    |
/// |----------|----------|----------|
/// | X        | `c11`    | `c10`    |
/// | not X    | `c01`    | `c00`    |
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContingencyTable {
    c11: f64,
    c10: f64,
    c01: f64,
    c00: f64,
    n: f64,
}

impl ContingencyTable {
    /// Builds a table from integer cell counts. At least one count must be
    /// positive.
    pub fn from_counts(c11: u64, c10: u64, c01: u64, c00: u64) -> Result<Self> {
        Self::from_real_counts(c11 as f64, c10 as f64, c01 as f64, c00 as f64)
    }

    /// Builds a table from real-valued cell "counts", as produced by
    /// idealized distributions (`n * p` per cell). Counts must be finite
    /// and nonnegative with a positive total.
    pub fn from_real_counts(c11: f64, c10: f64, c01: f64, c00: f64) -> Result<Self> {
        for c in [c11, c10, c01, c00] {
            if !c.is_finite() || c < 0.0 {
                return Err(Error::invalid(format!("bad cell count {c}")));
            }
        }
        let n = c11 + c10 + c01 + c00;
        if n <= 0.0 {
            return Err(Error::invalid("contingency table is empty"));
        }
        Ok(ContingencyTable { c11, c10, c01, c00, n })
    }

    /// Counts the four cells of `x => y` in a relation.
    pub fn from_relation(rel: &Relation, x: &Event, y: &Event) -> Result<Self> {
        let joint = x.union(y)?;
        let c11 = rel.support(&joint)?;
        let cx = rel.support(x)?;
        let cy = rel.support(y)?;
        let n = rel.n() as u64;
        // n + c11 >= cx + cy because cx + cy - c11 counts |X or Y| rows.
        Self::from_counts(c11, cx - c11, cy - c11, n + c11 - cx - cy)
    }

    /// Idealized table for `x => y` under an exact distribution, scaled to
    /// data size `n`.
    pub fn from_distribution(dist: &JointDistribution, x: &Event, y: &Event, n: f64) -> Result<Self> {
        if !(n > 0.0) {
            return Err(Error::invalid(format!("data size must be positive, got {n}")));
        }
        let joint = x.union(y)?;
        let pxy = dist.event_probability(&joint)?;
        let px = dist.event_probability(x)?;
        let py = dist.event_probability(y)?;
        Self::from_real_counts(
            n * pxy,
            n * (px - pxy).max(0.0),
            n * (py - pxy).max(0.0),
            n * (1.0 - px - py + pxy).max(0.0),
        )
    }

    pub fn n(&self) -> f64 {
        self.n
    }

    pub fn c11(&self) -> f64 {
        self.c11
    }

    pub fn c10(&self) -> f64 {
        self.c10
    }

    pub fn c01(&self) -> f64 {
        self.c01
    }

    pub fn c00(&self) -> f64 {
        self.c00
    }

    /// Row count of X, i.e. `m(X)`.
    pub fn mx(&self) -> f64 {
        self.c11 + self.c10
    }

    /// Column count of Y, i.e. `m(Y)`.
    pub fn my(&self) -> f64 {
        self.c11 + self.c01
    }

    pub fn px(&self) -> f64 {
        self.mx() / self.n
    }

    pub fn py(&self) -> f64 {
        self.my() / self.n
    }

    pub fn pxy(&self) -> f64 {
        self.c11 / self.n
    }

    /// Dependence value `d = P(X,Y) - P(X)P(Y)`, computed with exact
    /// integer products where the counts are integers.
    pub fn d(&self) -> f64 {
        (self.c11 * self.n - self.mx() * self.my()) / (self.n * self.n)
    }

    /// The table of rule `!X => Y`.
    pub fn negate_x(&self) -> Self {
        ContingencyTable {
            c11: self.c01,
            c10: self.c00,
            c01: self.c11,
            c00: self.c10,
            n: self.n,
        }
    }

    /// The table of rule `X => !Y`.
    pub fn negate_y(&self) -> Self {
        ContingencyTable {
            c11: self.c10,
            c10: self.c11,
            c01: self.c00,
            c00: self.c01,
            n: self.n,
        }
    }

    /// The table of rule `Y => X`.
    pub fn swap_xy(&self) -> Self {
        ContingencyTable {
            c11: self.c11,
            c10: self.c01,
            c01: self.c10,
            c00: self.c00,
            n: self.n,
        }
    }

    /// True when all four cells are whole numbers (so exact binomial
    /// arithmetic applies).
    pub fn is_integral(&self) -> bool {
        [self.c11, self.c10, self.c01, self.c00]
            .iter()
            .all(|c| c.fract() == 0.0 && *c <= 9e15)
    }
}

/// Rule frequency `fr(X => Y) = P(X,Y)`.
pub fn frequency(ct: &ContingencyTable) -> f64 {
    ct.pxy()
}

/// Rule confidence `cf(X => Y) = P(Y|X)`; undefined when `P(X) = 0`.
pub fn confidence(ct: &ContingencyTable) -> Result<f64> {
    if ct.mx() == 0.0 {
        return Err(Error::undefined("confidence needs P(X) > 0"));
    }
    Ok(ct.c11() / ct.mx())
}

/// Dependence value `d = P(X,Y) - P(X)P(Y)`; always defined, and bounded
/// by `|d| <= 0.25`.
pub fn dependence_value(ct: &ContingencyTable) -> f64 {
    ct.d()
}

/// Relative difference `r = d / (P(X)P(Y))`; undefined when
/// `P(X)P(Y) = 0`.
pub fn relative_difference(ct: &ContingencyTable) -> Result<f64> {
    if ct.mx() == 0.0 || ct.my() == 0.0 {
        return Err(Error::undefined("relative difference needs P(X)P(Y) > 0"));
    }
    Ok(ct.d() / (ct.px() * ct.py()))
}

/// Degree of dependence `gamma = P(X,Y) / (P(X)P(Y))`; undefined when
/// `P(X)P(Y) = 0`. Satisfies `gamma = 1 + r` and
/// `gamma <= 1 / max(P(X), P(Y))`.
pub fn degree_of_dependence(ct: &ContingencyTable) -> Result<f64> {
    if ct.mx() == 0.0 || ct.my() == 0.0 {
        return Err(Error::undefined("degree of dependence needs P(X)P(Y) > 0"));
    }
    Ok(ct.pxy() / (ct.px() * ct.py()))
}

fn check_nondegenerate(ct: &ContingencyTable, what: &str) -> Result<()> {
    if ct.mx() == 0.0 || ct.mx() == ct.n() || ct.my() == 0.0 || ct.my() == ct.n() {
        return Err(Error::undefined(format!(
            "{what} needs non-degenerate marginals (0 < P(X), P(Y) < 1)"
        )));
    }
    Ok(())
}

/// Chi-squared of the 2x2 table,
/// `chi2 = n d^2 / (P(X)P(!X)P(Y)P(!Y))`; undefined when either marginal
/// is 0 or 1. Symmetric in X and Y and invariant under negating both.
pub fn chi_squared(ct: &ContingencyTable) -> Result<f64> {
    check_nondegenerate(ct, "chi-squared")?;
    let d = ct.d();
    Ok(ct.n() * d * d
        / (ct.px() * (1.0 - ct.px()) * ct.py() * (1.0 - ct.py())))
}

/// Pearson correlation `phi = d / sqrt(P(X)P(!X)P(Y)P(!Y))`; undefined
/// under the same degeneracy as chi-squared. `phi^2 * n = chi2`.
pub fn phi_coefficient(ct: &ContingencyTable) -> Result<f64> {
    check_nondegenerate(ct, "phi")?;
    Ok(ct.d()
        / (ct.px() * (1.0 - ct.px()) * ct.py() * (1.0 - ct.py())).sqrt())
}

/// One `p log2(q/b)` term of the J-measure with the `0 * log 0 = 0`
/// convention.
fn j_term(p_joint: f64, p_cond: f64, base: f64) -> f64 {
    if p_joint == 0.0 {
        0.0
    } else {
        p_joint * (p_cond / base).log2()
    }
}

/// J-measure of rule `X => C` in bits:
/// `J(C|X) = P(X,C) log2(P(C|X)/P(C)) + P(X,!C) log2(P(!C|X)/P(!C))`.
///
/// Undefined when `P(X) = 0` or `P(C)` is degenerate. Note the exact term
/// symmetry `J(C|X) = J(!C|X)`.
pub fn j_measure(ct: &ContingencyTable) -> Result<f64> {
    if ct.mx() == 0.0 {
        return Err(Error::undefined("J-measure needs P(X) > 0"));
    }
    if ct.my() == 0.0 || ct.my() == ct.n() {
        return Err(Error::undefined("J-measure needs 0 < P(C) < 1"));
    }
    let n = ct.n();
    let py = ct.py();
    Ok(j_term(ct.c11() / n, ct.c11() / ct.mx(), py)
        + j_term(ct.c10() / n, ct.c10() / ct.mx(), 1.0 - py))
}

/// Mutual information of the rule attribute pair in bits:
/// `MI(X, C) = J(C|X) + J(C|!X)`. Undefined when either marginal is
/// degenerate.
pub fn mutual_information(ct: &ContingencyTable) -> Result<f64> {
    check_nondegenerate(ct, "mutual information")?;
    Ok(j_measure(ct)? + j_measure(&ct.negate_x())?)
}

/// Interest of an assignment under a joint distribution:
/// `rho = P(A1=a1,...,Al=al) / (P(A1=a1) * ... * P(Al=al))`.
///
/// Undefined when the marginal product is zero; the event must mention at
/// least one attribute.
pub fn interest_rho(dist: &JointDistribution, event: &Event) -> Result<f64> {
    if event.is_empty() {
        return Err(Error::invalid("interest needs a non-empty assignment"));
    }
    let mut null = 1.0;
    for l in event.literals() {
        if l.attr.0 >= dist.attribute_count() {
            return Err(Error::UnknownAttribute(format!(
                "attribute index {} (distribution has {})",
                l.attr.0,
                dist.attribute_count()
            )));
        }
        null *= dist.marginal(l.attr.0, l.value);
    }
    if null == 0.0 {
        return Err(Error::undefined("interest needs all marginals nonzero"));
    }
    Ok(dist.event_probability(event)? / null)
}

/// Set-level chi-squared over all `2^k` cells of a distribution at data
/// size `n`:
/// `chi2(X) = sum_cells n (P(cell) - prod P(Ai=ai))^2 / prod P(Ai=ai)`.
///
/// Undefined when any single-attribute marginal is degenerate. This
/// quantity never decreases when attributes are added to the set.
pub fn chi_squared_set(dist: &JointDistribution, n: f64) -> Result<f64> {
    if !(n > 0.0) {
        return Err(Error::invalid(format!("data size must be positive, got {n}")));
    }
    for a in 0..dist.attribute_count() {
        let m = dist.marginal(a, true);
        if m == 0.0 || m == 1.0 {
            return Err(Error::undefined(format!(
                "set chi-squared needs non-degenerate marginals (attribute {:?})",
                dist.names()[a]
            )));
        }
    }
    let mut total = 0.0;
    for c in 0..dist.cells().len() {
        let expected = dist.independence_null(c);
        let dev = dist.cell(c) - expected;
        total += n * dev * dev / expected;
    }
    Ok(total)
}

/// Cell-frequency measure over a full cross table: the largest threshold
/// `s` such that at least a `p` fraction of the `2^k` cells have
/// probability `>= s`. Equivalently the `ceil(p * 2^k)`-th largest cell
/// probability. `p` must lie in `(0, 1]`.
pub fn cell_frequency(dist: &JointDistribution, p: f64) -> Result<f64> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::invalid(format!("p must be in (0, 1], got {p}")));
    }
    let mut cells = dist.cells().to_vec();
    cells.sort_by(|a, b| b.partial_cmp(a).expect("cell probabilities are finite"));
    let rank = ((p * cells.len() as f64).ceil() as usize).clamp(1, cells.len());
    Ok(cells[rank - 1])
}

/// Largest set size that can still pass `cell_frequency(dist, p) >=
/// min_fr`: `floor(-log2(p * min_fr))`. With `p = 0.25` and
/// `min_fr = 0.01`, sets of more than 8 attributes always fail.
pub fn cell_frequency_length_bound(p: f64, min_fr: f64) -> Result<u32> {
    if !(p > 0.0 && p <= 1.0) || !(min_fr > 0.0 && min_fr <= 1.0) {
        return Err(Error::invalid("p and min_fr must be in (0, 1]"));
    }
    Ok((-(p * min_fr).log2() + 1e-9).floor() as u32)
}

/// Every measure of one rule, with undefined values kept explicit. `rho`
/// on a 2x2 table coincides with `gamma`.
#[derive(Debug, Clone, Copy, PartialEq, Default, serde::Serialize, serde::Deserialize)]
pub struct MeasureReport {
    pub fr: f64,
    pub cf: Option<f64>,
    pub d: f64,
    pub r: Option<f64>,
    pub gamma: Option<f64>,
    pub t: Option<f64>,
    pub chi2: Option<f64>,
    pub phi: Option<f64>,
    pub j: Option<f64>,
    pub mi: Option<f64>,
    pub rho: Option<f64>,
}

impl MeasureReport {
    pub fn from_table(ct: &ContingencyTable) -> MeasureReport {
        let gamma = degree_of_dependence(ct).ok();
        MeasureReport {
            fr: frequency(ct),
            cf: confidence(ct).ok(),
            d: dependence_value(ct),
            r: relative_difference(ct).ok(),
            gamma,
            t: significance::t_statistic(ct).ok(),
            chi2: chi_squared(ct).ok(),
            phi: phi_coefficient(ct).ok(),
            j: j_measure(ct).ok(),
            mi: mutual_information(ct).ok(),
            rho: gamma,
        }
    }
}
