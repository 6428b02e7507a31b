//! `sigrule bounds`: the closed-form frequency and chi-squared bounds.
//!
//! Four parameter combinations select four computations:
//!
//! * `--px --py --n --K` - the minimum frequency and confidence a rule
//!   with those marginals needs to reach significance level K;
//! * `--pmin --n --K` - the safe search floor derived from the rarest
//!   attribute probability, below which no rule can reach level K;
//! * `--gamma --n --K` - the minimum frequency at a fixed degree of
//!   dependence;
//! * `--pzc --pznc --pc --n` - the upper bound on chi-squared over all
//!   specializations of a rule `Z => C` with the given cell frequencies.

use sigrule_core::significance::{
    min_confidence_for_significance, min_frequency_at_gamma, min_frequency_for_significance,
    morishita_chi2_bound, safe_min_frequency,
};
use sigrule_core::ContingencyTable;

use crate::fmt::sig9;
use crate::{core_usage, CliError};

#[derive(clap::Args, Debug)]
pub struct BoundsArgs {
    /// Antecedent marginal P(X).
    #[arg(long)]
    pub px: Option<f64>,

    /// Consequent marginal P(Y).
    #[arg(long)]
    pub py: Option<f64>,

    /// Smallest single-attribute probability in the data.
    #[arg(long = "pmin")]
    pub p_min: Option<f64>,

    /// Degree of dependence P(X,Y)/(P(X)P(Y)).
    #[arg(long)]
    pub gamma: Option<f64>,

    /// Joint frequency P(Z,C) of the generalization and the consequent.
    #[arg(long)]
    pub pzc: Option<f64>,

    /// Joint frequency P(Z,not C).
    #[arg(long)]
    pub pznc: Option<f64>,

    /// Consequent marginal P(C).
    #[arg(long)]
    pub pc: Option<f64>,

    /// Data size.
    #[arg(long)]
    pub n: Option<u64>,

    /// Significance level.
    #[arg(long = "K", alias = "k")]
    pub k: Option<f64>,
}

const COMBOS: &str = "valid combinations:
  --px --py --n --K        minimum frequency and confidence for significance
  --pmin --n --K           safe frequency floor for a complete search
  --gamma --n --K          minimum frequency at a fixed degree of dependence
  --pzc --pznc --pc --n    chi-squared bound over specializations of Z => C";

fn usage(msg: &str) -> CliError {
    CliError::Usage(format!("{msg}\n{COMBOS}"))
}

fn need_n_k(n: Option<u64>, k: Option<f64>) -> Result<(u64, f64), CliError> {
    match (n, k) {
        (Some(n), Some(k)) => Ok((n, k)),
        _ => Err(usage("this combination also needs --n and --K")),
    }
}

pub fn run(args: &BoundsArgs) -> Result<i32, CliError> {
    match (args.px, args.py, args.p_min, args.gamma, args.pzc, args.pznc, args.pc) {
        (Some(px), Some(py), None, None, None, None, None) => {
            let (n, k) = need_n_k(args.n, args.k)?;
            let min_fr = min_frequency_for_significance(px, py, n, k).map_err(core_usage)?;
            let min_cf = min_confidence_for_significance(px, py, n, k).map_err(core_usage)?;
            println!("# min_fr = P(X)P(Y) + K*sqrt(P(X)P(Y)(1 - P(X)P(Y)))/sqrt(n)");
            println!("min_fr\t{}", sig9(min_fr));
            println!("# min_cf = min_fr/P(X)");
            println!("min_cf\t{}", sig9(min_cf));
        }
        (None, None, Some(p_min), None, None, None, None) => {
            let (n, k) = need_n_k(args.n, args.k)?;
            let floor = safe_min_frequency(p_min, n, k).map_err(core_usage)?;
            println!("# safe_min_fr = K^2*g/(n*(g - 1)^2 + K^2) at g = 1/p_min,");
            println!("# the largest degree of dependence any rule can reach");
            println!("safe_min_fr\t{}", sig9(floor));
        }
        (None, None, None, Some(gamma), None, None, None) => {
            let (n, k) = need_n_k(args.n, args.k)?;
            let min_fr = min_frequency_at_gamma(gamma, n, k).map_err(core_usage)?;
            println!("# min_fr_at_gamma = K^2*gamma/(n*(gamma - 1)^2 + K^2)");
            println!("min_fr_at_gamma\t{}", sig9(min_fr));
        }
        (None, None, None, None, Some(pzc), Some(pznc), Some(pc)) => {
            let n = args.n.ok_or_else(|| usage("this combination also needs --n"))?;
            if args.k.is_some() {
                return Err(usage("--K does not apply to the chi-squared bound"));
            }
            for (name, v) in [("--pzc", pzc), ("--pznc", pznc), ("--pc", pc)] {
                if !(0.0..=1.0).contains(&v) {
                    return Err(usage(&format!("{name} must be in [0,1], got {v}")));
                }
            }
            if pzc > pc || pznc > 1.0 - pc {
                return Err(usage("need P(Z,C) <= P(C) and P(Z,not C) <= 1 - P(C)"));
            }
            let nf = n as f64;
            let ct = ContingencyTable::from_real_counts(
                nf * pzc,
                nf * pznc,
                nf * (pc - pzc),
                nf * (1.0 - pznc - pc),
            )
            .map_err(core_usage)?;
            let bound = morishita_chi2_bound(&ct).map_err(core_usage)?;
            println!("# chi2_bound = max(n*P(Z,C)(1 - P(C))/((1 - P(Z,C))P(C)),");
            println!("#                  n*P(Z,!C)P(C)/((1 - P(Z,!C))(1 - P(C))))");
            println!("chi2_bound\t{}", sig9(bound));
        }
        _ => return Err(usage("the given flags match no bound computation")),
    }
    Ok(0)
}
