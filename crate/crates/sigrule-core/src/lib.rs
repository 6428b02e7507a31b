//! Association rule mining with statistically sound significance measures.
//!
//! Rules `X => Y` over binary attributes are scored by how surprising the
//! observed joint count is under the independence null, using the
//! standardized `t` statistic, the exact binomial tail, and its normal
//! approximation. The crate also implements the classical descriptive
//! measures (confidence, degree of dependence, chi-squared, phi
//! correlation, J-measure, mutual information, interest), the frequency
//! bounds that make significance-complete mining feasible, redundancy
//! notions for pruning specializations, and a synthetic-distribution
//! harness that exhibits where each descriptive measure commits type 1 or
//! type 2 errors relative to the `t` criterion.
//!
//! # Quick start
//!
//! ```
//! use sigrule_core::{miner, relation::Relation};
//!
//! let data = "\
//! coffee tea sugar
//! coffee sugar
//! coffee sugar
//! tea
//! coffee";
//! let rel = Relation::parse_transactions(data).unwrap();
//! let cfg = miner::MineConfig {
//!     k: 0.5, // demo data is tiny; a serious analysis wants k >= 2
//!     ..miner::MineConfig::default()
//! };
//! let found = miner::mine(&rel, &cfg).unwrap();
//! for rule in &found.rules {
//!     println!(
//!         "{} => {}  t={:.3}",
//!         rel.render_event(&rule.antecedent),
//!         rel.render_event(&rule.consequent),
//!         rule.t
//!     );
//! }
//! ```

pub mod error;
pub mod relation;
pub mod joint;
pub mod measures;
pub mod significance;
pub mod miner;
pub mod redundancy;
pub mod synth;

mod bits;

pub use error::{Error, Result};
pub use measures::{ContingencyTable, MeasureReport};
pub use relation::{AttrId, Event, Literal, Relation};
