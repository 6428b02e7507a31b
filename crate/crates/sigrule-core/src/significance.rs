//! Significance statistics: the standardized `t` statistic, the exact
//! binomial tail, its normal approximation, and the closed-form frequency
//! bounds that make significance-complete mining possible.
//!
//! The null model for a rule `X => Y` is independence: the joint count
//! `m(X,Y)` is Binomial(n, P(X)P(Y)) with the marginals estimated from
//! data. The one-sided tail `P(M >= m(X,Y))` is the p-value; `t` is the
//! standardized count
//! `t = (m(X,Y) - n P(X)P(Y)) / sqrt(n P(X)P(Y)(1 - P(X)P(Y)))`,
//! and the normal approximation `p ~ 1 - Phi(t)` is trusted only when the
//! expected counts on both sides are large enough. Only the upper tail is
//! tested: the search is for positive dependencies, and the three
//! companion rules (`X => !Y` etc.) have their own tables.

use crate::error::{Error, Result};
use crate::measures::ContingencyTable;
use crate::relation::{Event, Relation};

/// Exact binomial tails are summed up to this data size; beyond it only
/// the normal approximation is reported.
pub const MAX_EXACT_N: u64 = 100_000;

/// Parameters of a significance evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignificanceConfig {
    /// Required `t` level. Two is the usual floor ("two sigma"); the
    /// Chebyshev bound `1/(2K^2)` holds for any distribution.
    pub k: f64,
    /// Number of tests for the Bonferroni-style correction. When set, the
    /// effective level becomes `sqrt(m) * K`.
    pub bonferroni_tests: Option<u64>,
    /// Minimum expected count on both tails for the normal approximation
    /// to be declared valid (the classical rule of five).
    pub approx_rule_min_expected: f64,
}

impl Default for SignificanceConfig {
    fn default() -> Self {
        SignificanceConfig {
            k: 2.0,
            bonferroni_tests: None,
            approx_rule_min_expected: 5.0,
        }
    }
}

impl SignificanceConfig {
    /// The `t` level after the multiple-testing correction: `sqrt(m) * K`
    /// when `bonferroni_tests` is set, plain `K` otherwise.
    pub fn effective_k(&self) -> f64 {
        match self.bonferroni_tests {
            Some(m) => (m as f64).sqrt() * self.k,
            None => self.k,
        }
    }
}

/// Outcome of evaluating one rule's significance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignificanceResult {
    /// Standardized joint count.
    pub t_value: f64,
    /// Exact binomial tail; absent when `n > MAX_EXACT_N` or the table's
    /// counts are not whole numbers.
    pub p_exact: Option<f64>,
    /// Normal-approximation tail `1 - Phi(t)`.
    pub p_normal: Option<f64>,
    /// Whether the normal approximation is trustworthy here.
    pub approx_valid: bool,
    /// Expected joint count `n P(X)P(Y)` under independence.
    pub expected_count: f64,
}

/// Kernel shared by the rule and set forms: standardizes a count `m`
/// against Binomial(n, p0).
fn t_from_counts(m: f64, n: f64, p0: f64) -> Result<f64> {
    if p0 <= 0.0 || p0 >= 1.0 {
        return Err(Error::undefined(format!(
            "t statistic needs 0 < null probability < 1, got {p0}"
        )));
    }
    Ok((m - n * p0) / (n * p0 * (1.0 - p0)).sqrt())
}

/// The `t` statistic of a rule table. Positive iff the dependence value
/// `d` is positive; undefined when `P(X)P(Y)` is 0 or 1.
pub fn t_statistic(ct: &ContingencyTable) -> Result<f64> {
    let n = ct.n();
    let p0 = (ct.mx() / n) * (ct.my() / n);
    // Compute m - n*p0 as n*d: the count products are exact for integer
    // tables, which keeps t accurate near independence.
    if p0 <= 0.0 || p0 >= 1.0 {
        return Err(Error::undefined(format!(
            "t statistic needs 0 < P(X)P(Y) < 1, got {p0}"
        )));
    }
    Ok(n * ct.d() / (n * p0 * (1.0 - p0)).sqrt())
}

/// Set-level `t`: standardizes the count of a full assignment against the
/// product of its single-attribute marginal probabilities (the
/// all-independent null). With two attributes this is `t_statistic`.
pub fn t_statistic_set(rel: &Relation, event: &Event) -> Result<f64> {
    let n = rel.n() as f64;
    let m = rel.support(event)? as f64;
    let mut p0 = 1.0;
    for &l in event.literals() {
        p0 *= rel.probability(&Event::single(l))?;
    }
    t_from_counts(m, n, p0)
}

/// Exact one-sided binomial tail `P(M >= m)` for `M ~ Binomial(n, p0)`,
/// summed with an incremental-ratio recurrence and compensated addition.
pub fn binomial_tail_p(m: u64, n: u64, p0: f64) -> Result<f64> {
    if m > n {
        return Err(Error::invalid(format!("m = {m} exceeds n = {n}")));
    }
    if !(0.0..=1.0).contains(&p0) {
        return Err(Error::invalid(format!("p0 must be in [0,1], got {p0}")));
    }
    if m == 0 || p0 == 1.0 {
        return Ok(1.0);
    }
    if p0 == 0.0 {
        return Ok(0.0);
    }
    let q = 1.0 - p0;
    // Sum whichever side of the distribution is shorter and made of
    // decreasing terms: the upper tail from m when m is above the mean,
    // otherwise the complement of the lower tail. Starting each sum at
    // its largest term keeps the result monotone in m down to the last
    // few ulps, which a straight left-to-right sum across the mode does
    // not.
    if (m as f64) > n as f64 * p0 {
        let mut term = ln_pmf(m, n, p0).exp();
        let mut sum = KahanSum::new(term);
        for i in m..n {
            let ratio = ((n - i) as f64 / (i as f64 + 1.0)) * (p0 / q);
            term *= ratio;
            sum.add(term);
            if ratio < 1.0 && term < sum.value() * 1e-18 {
                break;
            }
        }
        Ok(sum.value().min(1.0))
    } else {
        // P(M >= m) = 1 - P(M <= m-1), summed downward from i = m-1.
        let mut term = ln_pmf(m - 1, n, p0).exp();
        let mut sum = KahanSum::new(term);
        for i in (1..m).rev() {
            let ratio = (i as f64 / (n - i + 1) as f64) * (q / p0);
            term *= ratio;
            sum.add(term);
            if ratio < 1.0 && term < sum.value() * 1e-18 {
                break;
            }
        }
        Ok((1.0 - sum.value()).clamp(0.0, 1.0))
    }
}

/// Log of the Binomial(n, p0) probability mass at `i`, via lgamma.
fn ln_pmf(i: u64, n: u64, p0: f64) -> f64 {
    let ln_choose = libm::lgamma(n as f64 + 1.0)
        - libm::lgamma(i as f64 + 1.0)
        - libm::lgamma((n - i) as f64 + 1.0);
    ln_choose + i as f64 * p0.ln() + (n - i) as f64 * (1.0 - p0).ln()
}

/// Compensated (Kahan) accumulator; the tails can span ~n terms and plain
/// addition would cost a digit of accuracy at n = 1e5.
struct KahanSum {
    total: f64,
    comp: f64,
}

impl KahanSum {
    fn new(first: f64) -> Self {
        KahanSum { total: first, comp: 0.0 }
    }

    fn add(&mut self, x: f64) {
        let y = x - self.comp;
        let t = self.total + y;
        self.comp = (t - self.total) - y;
        self.total = t;
    }

    fn value(&self) -> f64 {
        self.total
    }
}

/// Normal upper tail `1 - Phi(t)`, evaluated as `erfc(t / sqrt 2) / 2`
/// so it stays accurate to full double precision far into the tail.
pub fn normal_tail_p(t: f64) -> f64 {
    0.5 * libm::erfc(t / std::f64::consts::SQRT_2)
}

/// Distribution-free tail bound `P(t >= K) < 1 / (2 K^2)`.
pub fn chebyshev_bound(k: f64) -> Result<f64> {
    if !(k > 0.0) {
        return Err(Error::invalid(format!("K must be positive, got {k}")));
    }
    Ok(1.0 / (2.0 * k * k))
}

/// Smallest frequency at which a rule with the given marginals reaches
/// `t = K`:
/// `min fr = P(X)P(Y) + K sqrt(P(X)P(Y)(1 - P(X)P(Y))) / sqrt(n)`.
///
/// The value may exceed 1, meaning no rule with these marginals can reach
/// level `K` at this data size; it is returned as computed.
pub fn min_frequency_for_significance(px: f64, py: f64, n: u64, k: f64) -> Result<f64> {
    check_marginal(px, "P(X)")?;
    check_marginal(py, "P(Y)")?;
    check_n_k(n, k)?;
    let p0 = px * py;
    Ok(p0 + k * (p0 * (1.0 - p0)).sqrt() / (n as f64).sqrt())
}

/// Smallest confidence at which a rule with the given marginals reaches
/// `t = K`; this is just `min_frequency_for_significance / P(X)`.
pub fn min_confidence_for_significance(px: f64, py: f64, n: u64, k: f64) -> Result<f64> {
    Ok(min_frequency_for_significance(px, py, n, k)? / px)
}

/// Frequency at which `t = K` for a given degree of dependence
/// `gamma > 1`:
/// `P(X,Y) = K^2 gamma / (n (gamma - 1)^2 + K^2)`.
///
/// For fixed `gamma`, `t` grows with frequency, so a rule with this
/// `gamma` and `t >= K` has at least this frequency. The bound decreases
/// in `gamma`: stronger dependence needs less data.
pub fn min_frequency_at_gamma(gamma: f64, n: u64, k: f64) -> Result<f64> {
    if !(gamma > 1.0) {
        return Err(Error::invalid(format!(
            "gamma must exceed 1 for a positive-dependence bound, got {gamma}"
        )));
    }
    check_n_k(n, k)?;
    Ok(k * k * gamma / (n as f64 * (gamma - 1.0) * (gamma - 1.0) + k * k))
}

/// Safe global minimum-frequency floor: with `p_min` the smallest
/// single-literal probability in play, no rule `X \ A => A` can reach
/// `t >= K` unless
/// `P(X) >= K^2 p_min / (n (1 - p_min)^2 + K^2 p_min^2)`.
///
/// This is exactly [`min_frequency_at_gamma`] at the extreme
/// `gamma = 1 / p_min` (the largest degree of dependence any such rule
/// can have), and is implemented as that substitution so the two bounds
/// can never drift apart. The underlying argument is stated for
/// `K >= 2`; smaller `K` values are accepted since the algebra is the
/// same.
pub fn safe_min_frequency(p_min: f64, n: u64, k: f64) -> Result<f64> {
    if !(p_min > 0.0 && p_min < 1.0) {
        return Err(Error::invalid(format!(
            "p_min must be in (0,1), got {p_min}"
        )));
    }
    min_frequency_at_gamma(1.0 / p_min, n, k)
}

/// Upper bound on the chi-squared of every specialization `X => C` with
/// `X` a superset of `Z`, computed from the `Z => C` table:
/// `chi2(X => C) <= max{ n P(Z,C)P(!C) / ((1-P(Z,C)) P(C)),
///                       n P(Z,!C)P(C) / ((1-P(Z,!C)) P(!C)) }`.
pub fn morishita_chi2_bound(ct: &ContingencyTable) -> Result<f64> {
    let n = ct.n();
    let (pzc, pznc) = (ct.c11() / n, ct.c10() / n);
    let pc = ct.py();
    if pc == 0.0 || pc == 1.0 {
        return Err(Error::invalid(
            "chi-squared bound needs a non-degenerate consequent marginal",
        ));
    }
    if pzc == 1.0 || pznc == 1.0 {
        return Err(Error::invalid(
            "chi-squared bound needs P(Z,C) < 1 and P(Z,!C) < 1",
        ));
    }
    let with_c = n * pzc * (1.0 - pc) / ((1.0 - pzc) * pc);
    let against_c = n * pznc * pc / ((1.0 - pznc) * (1.0 - pc));
    Ok(with_c.max(against_c))
}

/// Contour form of `t` over (frequency, confidence) at fixed `P(Y)`,
/// with the data size factored out (`t = sqrt(n) * t_hat`):
/// `t_hat = sqrt(fr) (cf - P(Y)) / sqrt(P(Y) (cf - fr P(Y)))`.
///
/// Defined for `0 < fr <= P(Y)`, `fr <= cf <= 1` (so that `P(X) =
/// fr / cf` is a probability) and `cf > fr P(Y)`.
pub fn t_hat_fr_cf(fr: f64, cf: f64, py: f64) -> Result<f64> {
    check_marginal(py, "P(Y)")?;
    if !(fr > 0.0 && fr <= py) {
        return Err(Error::invalid(format!(
            "frequency must satisfy 0 < fr <= P(Y), got fr={fr}, P(Y)={py}"
        )));
    }
    if !(cf >= fr && cf <= 1.0) {
        return Err(Error::invalid(format!(
            "confidence must satisfy fr <= cf <= 1, got cf={cf}"
        )));
    }
    if cf <= fr * py {
        return Err(Error::invalid(format!(
            "t_hat undefined for cf <= fr * P(Y) (cf={cf}, fr*P(Y)={})",
            fr * py
        )));
    }
    Ok(fr.sqrt() * (cf - py) / (py * (cf - fr * py)).sqrt())
}

/// Contour form of `t` over (frequency, degree of dependence), data size
/// factored out:
/// `t_hat = sqrt(fr) (gamma - 1) / sqrt(gamma - fr)`.
///
/// Defined for `fr in (0, 1]`, `gamma >= 1` and `fr * gamma <= 1` (the
/// marginal cap `gamma <= 1 / max(P(X), P(Y))` makes larger products
/// unrealizable).
pub fn t_hat_fr_gamma(fr: f64, gamma: f64) -> Result<f64> {
    if !(fr > 0.0 && fr <= 1.0) {
        return Err(Error::invalid(format!("frequency must be in (0,1], got {fr}")));
    }
    if !(gamma >= 1.0) {
        return Err(Error::invalid(format!("gamma must be >= 1, got {gamma}")));
    }
    if fr * gamma > 1.0 {
        return Err(Error::invalid(format!(
            "no table realizes fr * gamma > 1 (fr={fr}, gamma={gamma})"
        )));
    }
    if gamma == 1.0 {
        return Ok(0.0);
    }
    Ok(fr.sqrt() * (gamma - 1.0) / (gamma - fr).sqrt())
}

/// Full significance evaluation of one table under a config.
pub fn evaluate(ct: &ContingencyTable, cfg: &SignificanceConfig) -> Result<SignificanceResult> {
    let t = t_statistic(ct)?;
    let n = ct.n();
    let p0 = (ct.mx() / n) * (ct.my() / n);
    let expected = n * p0;
    let approx_valid =
        expected > cfg.approx_rule_min_expected && n - expected > cfg.approx_rule_min_expected;
    let p_exact = if ct.is_integral() && n as u64 <= MAX_EXACT_N {
        Some(binomial_tail_p(ct.c11() as u64, n as u64, p0)?)
    } else {
        None
    };
    Ok(SignificanceResult {
        t_value: t,
        p_exact,
        p_normal: Some(normal_tail_p(t)),
        approx_valid,
        expected_count: expected,
    })
}

fn check_marginal(p: f64, what: &str) -> Result<()> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::invalid(format!("{what} must be in (0,1), got {p}")));
    }
    Ok(())
}

fn check_n_k(n: u64, k: f64) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("data size n must be at least 1"));
    }
    if !(k >= 0.0) {
        return Err(Error::invalid(format!("K must be nonnegative, got {k}")));
    }
    Ok(())
}
