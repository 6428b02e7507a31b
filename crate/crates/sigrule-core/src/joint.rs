//! Exact joint distributions over a handful of binary attributes.
//!
//! A [`JointDistribution`] stores one probability per cell of the full
//! cross table: with `k` attributes there are `2^k` cells, and cell index
//! `c` assigns attribute `i` the value of bit `i` of `c`. These
//! distributions back the synthetic counterexample families and the
//! analytic ("infinite data") evaluation path, where measures are computed
//! on idealized tables instead of samples.

use crate::error::{Error, Result};
use crate::relation::Event;

/// Tolerance for "cell probabilities sum to one".
const SUM_TOL: f64 = 1e-12;

/// Hard cap on attribute count: `2^16` cells is the largest table the
/// exact path is meant for.
pub const MAX_ATTRS: usize = 16;

/// A full joint distribution over named binary attributes.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution {
    names: Vec<String>,
    cells: Vec<f64>,
}

impl JointDistribution {
    /// Builds a distribution from explicit cell probabilities. `cells`
    /// must have length `2^names.len()`, entries must be nonnegative, and
    /// the total must be 1 within `1e-12`.
    pub fn new(names: Vec<String>, cells: Vec<f64>) -> Result<Self> {
        if names.is_empty() || names.len() > MAX_ATTRS {
            return Err(Error::invalid(format!(
                "joint distribution needs 1..={MAX_ATTRS} attributes, got {}",
                names.len()
            )));
        }
        if cells.len() != 1 << names.len() {
            return Err(Error::invalid(format!(
                "expected {} cells for {} attributes, got {}",
                1usize << names.len(),
                names.len(),
                cells.len()
            )));
        }
        if let Some(bad) = cells.iter().find(|&&p| !(p >= 0.0)) {
            return Err(Error::invalid(format!("negative cell probability {bad}")));
        }
        let total: f64 = cells.iter().sum();
        if (total - 1.0).abs() > SUM_TOL {
            return Err(Error::invalid(format!(
                "cell probabilities sum to {total}, not 1"
            )));
        }
        Ok(JointDistribution { names, cells })
    }

    /// Convenience constructor with attribute names `A`, `B`, `C`, ...
    pub fn with_default_names(cells: Vec<f64>) -> Result<Self> {
        let k = cells.len().trailing_zeros() as usize;
        if cells.len() != 1 << k {
            return Err(Error::invalid("cell count is not a power of two"));
        }
        let names = (0..k)
            .map(|i| {
                char::from_u32('A' as u32 + i as u32)
                    .expect("default names cover at most 16 attributes")
                    .to_string()
            })
            .collect();
        JointDistribution::new(names, cells)
    }

    pub fn attribute_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn cells(&self) -> &[f64] {
        &self.cells
    }

    /// Probability of the cell whose assignment is given by the bits of
    /// `index` (bit `i` = value of attribute `i`).
    pub fn cell(&self, index: usize) -> f64 {
        self.cells[index]
    }

    /// Marginal `P(attr = value)`.
    pub fn marginal(&self, attr: usize, value: bool) -> f64 {
        self.cells
            .iter()
            .enumerate()
            .filter(|(c, _)| (c >> attr & 1 == 1) == value)
            .map(|(_, &p)| p)
            .sum()
    }

    /// Product of single-attribute marginals for the assignment encoded by
    /// `index` - the independence null for that cell.
    pub fn independence_null(&self, index: usize) -> f64 {
        (0..self.names.len())
            .map(|a| self.marginal(a, index >> a & 1 == 1))
            .product()
    }

    /// Probability of a conjunction of literals (attribute indices refer
    /// to this distribution's attribute order).
    pub fn event_probability(&self, event: &Event) -> Result<f64> {
        for l in event.literals() {
            if l.attr.0 >= self.names.len() {
                return Err(Error::UnknownAttribute(format!(
                    "attribute index {} (distribution has {})",
                    l.attr.0,
                    self.names.len()
                )));
            }
        }
        Ok(self
            .cells
            .iter()
            .enumerate()
            .filter(|(c, _)| {
                event
                    .literals()
                    .iter()
                    .all(|l| (c >> l.attr.0 & 1 == 1) == l.value)
            })
            .map(|(_, &p)| p)
            .sum())
    }

    /// Marginalizes onto a subset of attributes, in the order given.
    /// `attrs` must be distinct and in range.
    pub fn marginalize(&self, attrs: &[usize]) -> Result<JointDistribution> {
        if attrs.is_empty() {
            return Err(Error::invalid("cannot marginalize onto zero attributes"));
        }
        for (i, &a) in attrs.iter().enumerate() {
            if a >= self.names.len() {
                return Err(Error::invalid(format!("attribute index {a} out of range")));
            }
            if attrs[..i].contains(&a) {
                return Err(Error::invalid(format!("duplicate attribute index {a}")));
            }
        }
        let mut cells = vec![0.0; 1 << attrs.len()];
        for (c, &p) in self.cells.iter().enumerate() {
            let mut sub = 0usize;
            for (j, &a) in attrs.iter().enumerate() {
                sub |= (c >> a & 1) << j;
            }
            cells[sub] += p;
        }
        JointDistribution::new(
            attrs.iter().map(|&a| self.names[a].clone()).collect(),
            cells,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::{AttrId, Event, Literal};

    fn dist3() -> JointDistribution {
        // P(A,B,C) with A,B,C independent, P=0.5 each.
        JointDistribution::with_default_names(vec![0.125; 8]).unwrap()
    }

    #[test]
    fn constructor_validates_shape_and_mass() {
        assert!(JointDistribution::with_default_names(vec![0.5, 0.5]).is_ok());
        assert!(JointDistribution::with_default_names(vec![0.5, 0.6]).is_err());
        assert!(JointDistribution::with_default_names(vec![-0.1, 1.1]).is_err());
        assert!(JointDistribution::new(vec!["a".into()], vec![0.5; 4]).is_err());
        assert!(JointDistribution::new(vec![], vec![]).is_err());
        // 17 attributes is over the cap.
        let names: Vec<String> = (0..17).map(|i| format!("a{i}")).collect();
        assert!(JointDistribution::new(names, vec![0.0; 1 << 17]).is_err());
    }

    #[test]
    fn marginals_and_nulls_on_uniform_distribution() {
        let d = dist3();
        for a in 0..3 {
            assert!((d.marginal(a, true) - 0.5).abs() < 1e-15);
        }
        for c in 0..8 {
            assert!((d.independence_null(c) - 0.125).abs() < 1e-15);
        }
    }

    #[test]
    fn event_probability_sums_matching_cells() {
        let d = dist3();
        let e = Event::new(vec![
            Literal::pos(AttrId(0)),
            Literal::neg(AttrId(2)),
        ])
        .unwrap();
        assert!((d.event_probability(&e).unwrap() - 0.25).abs() < 1e-15);
        assert!((d.event_probability(&Event::empty()).unwrap() - 1.0).abs() < 1e-15);
        let bogus = Event::single(Literal::pos(AttrId(5)));
        assert!(d.event_probability(&bogus).is_err());
    }

    #[test]
    fn marginalize_preserves_event_probabilities() {
        // Non-uniform 3-attribute distribution.
        let cells = vec![0.05, 0.1, 0.2, 0.05, 0.15, 0.05, 0.1, 0.3];
        let d = JointDistribution::with_default_names(cells).unwrap();
        let m = d.marginalize(&[2, 0]).unwrap();
        assert_eq!(m.names(), &["C", "A"]);
        // P(C=1, A=0) in the original: cells with bit2=1, bit0=0.
        let want = 0.15 + 0.1; // indices 100=4 and 110=6
        assert!((m.cell(0b01) - want).abs() < 1e-15);
        assert!(d.marginalize(&[0, 0]).is_err());
        assert!(d.marginalize(&[3]).is_err());
        assert!(d.marginalize(&[]).is_err());
    }
}
