//! Binary relations over named attributes, and the events whose supports we
//! count.
//!
//! A [`Relation`] is an n-row / k-column 0/1 matrix stored column-wise as
//! packed bit vectors, so the support of a conjunction of literals is an
//! AND-fold plus popcount. Two loaders are provided: a transaction format
//! (one row per line, whitespace-separated attribute tokens) and a CSV
//! matrix (header row of names, then 0/1 cells).
//!
//! # Quick start
//!
//! ```
//! use sigrule_core::relation::Relation;
//!
//! let rel = Relation::parse_transactions("bread milk\nbread\nmilk juice\n").unwrap();
//! assert_eq!(rel.n(), 3);
//! let bread = rel.literal("bread", true).unwrap();
//! let milk = rel.literal("milk", true).unwrap();
//! let both = sigrule_core::relation::Event::new(vec![bread, milk]).unwrap();
//! assert_eq!(rel.support(&both).unwrap(), 1);
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::bits::{count_matching, BitColumn};
use crate::error::{Error, Result};

/// Index of an attribute within its relation. Names live on the relation;
/// events and rules only carry indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AttrId(pub usize);

/// One attribute fixed to a truth value: `A = true` or `A = false`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub attr: AttrId,
    pub value: bool,
}

impl Literal {
    pub fn pos(attr: AttrId) -> Self {
        Literal { attr, value: true }
    }

    pub fn neg(attr: AttrId) -> Self {
        Literal { attr, value: false }
    }

    pub fn negated(self) -> Self {
        Literal {
            attr: self.attr,
            value: !self.value,
        }
    }
}

/// A conjunction of literals over distinct attributes, kept sorted by
/// attribute index. The empty event is the always-true conjunction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Event {
    literals: Vec<Literal>,
}

impl Event {
    pub fn empty() -> Self {
        Event::default()
    }

    /// Builds an event from literals in any order. Exact duplicates are
    /// collapsed; two literals that fix the same attribute to different
    /// values are rejected.
    pub fn new(mut literals: Vec<Literal>) -> Result<Self> {
        literals.sort();
        literals.dedup();
        for pair in literals.windows(2) {
            if pair[0].attr == pair[1].attr {
                return Err(Error::invalid(format!(
                    "event fixes attribute #{} to both values",
                    pair[0].attr.0
                )));
            }
        }
        Ok(Event { literals })
    }

    pub fn single(lit: Literal) -> Self {
        Event {
            literals: vec![lit],
        }
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn contains(&self, lit: Literal) -> bool {
        self.literals.binary_search(&lit).is_ok()
    }

    pub fn mentions_attr(&self, attr: AttrId) -> bool {
        self.literals.iter().any(|l| l.attr == attr)
    }

    /// True when every literal of `self` occurs in `other`.
    pub fn is_subset_of(&self, other: &Event) -> bool {
        self.literals.iter().all(|&l| other.contains(l))
    }

    /// Conjunction of two events; fails if they fix a shared attribute to
    /// different values.
    pub fn union(&self, other: &Event) -> Result<Event> {
        let mut lits = self.literals.clone();
        lits.extend_from_slice(&other.literals);
        Event::new(lits)
    }

    /// Literals of `self` that do not occur in `other`.
    pub fn minus(&self, other: &Event) -> Event {
        Event {
            literals: self
                .literals
                .iter()
                .copied()
                .filter(|&l| !other.contains(l))
                .collect(),
        }
    }

    /// All strict subsets (including the empty event), smallest first.
    /// Intended for redundancy checks on short antecedents; the count is
    /// `2^len - 1`.
    pub fn strict_subsets(&self) -> Vec<Event> {
        assert!(self.len() <= 24, "strict_subsets on oversized event");
        let full = (1u32 << self.len()) - 1;
        let mut subsets: Vec<Event> = (0..full)
            .map(|mask| Event {
                literals: self
                    .literals
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &l)| l)
                    .collect(),
            })
            .collect();
        subsets.sort_by_key(|e| e.len());
        subsets
    }
}

impl FromIterator<Literal> for Event {
    /// Panics on conflicting literals; use [`Event::new`] for fallible
    /// construction from untrusted input.
    fn from_iter<T: IntoIterator<Item = Literal>>(iter: T) -> Self {
        Event::new(iter.into_iter().collect()).expect("conflicting literals")
    }
}

/// An n-row binary relation with named attribute columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Relation {
    names: Vec<String>,
    columns: Vec<BitColumn>,
    n: usize,
}

impl Relation {
    /// Number of rows.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of attributes.
    pub fn attribute_count(&self) -> usize {
        self.names.len()
    }

    pub fn attribute_names(&self) -> &[String] {
        &self.names
    }

    pub fn attribute_name(&self, attr: AttrId) -> &str {
        &self.names[attr.0]
    }

    /// Looks an attribute up by name.
    pub fn attribute(&self, name: &str) -> Result<AttrId> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(AttrId)
            .ok_or_else(|| Error::UnknownAttribute(name.to_string()))
    }

    /// Resolves a named literal, e.g. `("milk", false)` for `!milk`.
    pub fn literal(&self, name: &str, value: bool) -> Result<Literal> {
        Ok(Literal {
            attr: self.attribute(name)?,
            value,
        })
    }

    /// Cell value at (`row`, `attr`).
    pub fn value(&self, row: usize, attr: AttrId) -> bool {
        self.columns[attr.0].get(row)
    }

    /// Number of rows on which every literal of `event` holds. The empty
    /// event has support `n`.
    pub fn support(&self, event: &Event) -> Result<u64> {
        let mut lits = Vec::with_capacity(event.len());
        for l in event.literals() {
            let col = self.columns.get(l.attr.0).ok_or_else(|| {
                Error::UnknownAttribute(format!("attribute index {} (relation has {})", l.attr.0, self.names.len()))
            })?;
            lits.push((col, l.value));
        }
        Ok(count_matching(self.n, &lits))
    }

    /// Maximum-likelihood probability `support / n`.
    pub fn probability(&self, event: &Event) -> Result<f64> {
        Ok(self.support(event)? as f64 / self.n as f64)
    }

    /// Renders an event with the relation's attribute names in the same
    /// `[!]name` syntax the rule parser accepts. The empty event renders as
    /// `()`.
    pub fn render_event(&self, event: &Event) -> String {
        if event.is_empty() {
            return "()".to_string();
        }
        event
            .literals()
            .iter()
            .map(|l| {
                let name = self.attribute_name(l.attr);
                if l.value {
                    name.to_string()
                } else {
                    format!("!{name}")
                }
            })
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Builds a relation from explicit rows. Used by the synthetic sampler
    /// and by tests; the loaders below are the user-facing entry points.
    pub fn from_rows(names: Vec<String>, rows: &[Vec<bool>]) -> Result<Relation> {
        validate_names(&names)?;
        if rows.is_empty() {
            return Err(Error::load("dataset contains no rows"));
        }
        let n = rows.len();
        let mut columns = vec![BitColumn::zeros(n); names.len()];
        for (i, row) in rows.iter().enumerate() {
            if row.len() != names.len() {
                return Err(Error::load(format!(
                    "row {} has {} cells, expected {}",
                    i + 1,
                    row.len(),
                    names.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if v {
                    columns[j].set(i);
                }
            }
        }
        Ok(Relation { names, columns, n })
    }

    /// Parses the transaction format: one transaction per line, attribute
    /// tokens separated by whitespace. Blank lines are ignored, duplicate
    /// tokens within a line count once, and attributes are ordered
    /// lexicographically.
    pub fn parse_transactions(input: &str) -> Result<Relation> {
        let mut rows: Vec<BTreeSet<&str>> = Vec::new();
        let mut attrs: BTreeSet<&str> = BTreeSet::new();
        for line in input.lines() {
            let items: BTreeSet<&str> = line.split_whitespace().collect();
            if items.is_empty() {
                continue;
            }
            attrs.extend(items.iter().copied());
            rows.push(items);
        }
        if rows.is_empty() {
            return Err(Error::load("dataset contains no transactions"));
        }
        let index: BTreeMap<&str, usize> =
            attrs.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let n = rows.len();
        let mut columns = vec![BitColumn::zeros(n); attrs.len()];
        for (i, items) in rows.iter().enumerate() {
            for item in items {
                columns[index[item]].set(i);
            }
        }
        Ok(Relation {
            names: attrs.into_iter().map(str::to_string).collect(),
            columns,
            n,
        })
    }

    /// Parses the CSV matrix format: a header row of attribute names, then
    /// one row per transaction with `0`/`1` cells. Attribute order follows
    /// the header. Errors carry 1-based data-row numbers and column names.
    pub fn parse_csv_matrix(input: &str) -> Result<Relation> {
        let mut lines = input.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::load("dataset is empty (no header row)"))?;
        let names: Vec<String> = header.split(',').map(|s| s.trim().to_string()).collect();
        validate_names(&names)?;

        let mut columns = Vec::new();
        let mut n = 0usize;
        let mut cells: Vec<Vec<bool>> = Vec::new();
        for (data_row, (_, line)) in lines.enumerate() {
            let row = data_row + 1;
            let mut parsed = Vec::with_capacity(names.len());
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != names.len() {
                return Err(Error::load(format!(
                    "data row {} has {} cells, expected {}",
                    row,
                    fields.len(),
                    names.len()
                )));
            }
            for (j, field) in fields.iter().enumerate() {
                match field.trim() {
                    "0" => parsed.push(false),
                    "1" => parsed.push(true),
                    other => {
                        return Err(Error::load(format!(
                            "data row {}, column {:?}: expected 0 or 1, got {:?}",
                            row, names[j], other
                        )))
                    }
                }
            }
            cells.push(parsed);
            n += 1;
        }
        if n == 0 {
            return Err(Error::load("dataset has a header but no data rows"));
        }
        for j in 0..names.len() {
            let mut col = BitColumn::zeros(n);
            for (i, row) in cells.iter().enumerate() {
                if row[j] {
                    col.set(i);
                }
            }
            columns.push(col);
        }
        Ok(Relation { names, columns, n })
    }
}

fn validate_names(names: &[String]) -> Result<()> {
    if names.is_empty() {
        return Err(Error::load("dataset has no attributes"));
    }
    let mut seen = BTreeSet::new();
    for (j, name) in names.iter().enumerate() {
        if name.is_empty() {
            return Err(Error::load(format!("empty attribute name in column {}", j + 1)));
        }
        if !seen.insert(name) {
            return Err(Error::load(format!("duplicate attribute name {name:?}")));
        }
    }
    Ok(())
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Relation({} rows x {} attributes)", self.n, self.names.len())
    }
}
