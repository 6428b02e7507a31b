//! `sigrule contour`: grids of the size-free significance contour
//! `t_hat = t/sqrt(n)` for plotting.
//!
//! `frcf` mode fixes P(Y) and spans (frequency, confidence); `frgamma`
//! mode spans (frequency, degree of dependence) up to a given gamma.
//! Only realizable points with t_hat > 0 are emitted. Values are printed
//! at full precision - a grid point times sqrt(n) must reproduce the `t`
//! statistic of the exact table it names to much better than nine digits.

use sigrule_core::significance::{t_hat_fr_cf, t_hat_fr_gamma};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ModeArg {
    /// Rows are (fr, cf, t_hat) at fixed P(Y).
    Frcf,
    /// Rows are (fr, gamma, t_hat).
    Frgamma,
}

#[derive(clap::Args, Debug)]
pub struct ContourArgs {
    /// Which contour family to tabulate.
    #[arg(long, value_enum)]
    pub mode: ModeArg,

    /// Fixed consequent marginal P(Y); required in frcf mode.
    #[arg(long)]
    pub py: Option<f64>,

    /// Upper end of the gamma axis; required in frgamma mode, which
    /// spans gamma in (1, gamma-max].
    #[arg(long = "gamma-max")]
    pub gamma_max: Option<f64>,

    /// Grid resolution along each axis.
    #[arg(long, default_value_t = 50)]
    pub steps: usize,
}

pub fn run(args: &ContourArgs) -> Result<i32, CliError> {
    let steps = args.steps;
    if steps == 0 {
        return Err(CliError::Usage("--steps must be at least 1".into()));
    }
    match args.mode {
        ModeArg::Frcf => {
            let py = args
                .py
                .ok_or_else(|| CliError::Usage("mode frcf requires --py".into()))?;
            if args.gamma_max.is_some() {
                return Err(CliError::Usage("--gamma-max applies to mode frgamma only".into()));
            }
            if !(py > 0.0 && py < 1.0) {
                return Err(CliError::Usage(format!("--py must be in (0,1), got {py}")));
            }
            println!("# mode=frcf fixed=py={py} steps={steps}");
            // fr can reach at most P(Y); cf at most 1; the contour
            // function rejects the remaining unrealizable corners.
            for i in 1..=steps {
                let fr = py * i as f64 / steps as f64;
                for jj in 1..=steps {
                    let cf = jj as f64 / steps as f64;
                    if cf < fr {
                        continue; // would need P(X) = fr/cf > 1
                    }
                    if let Ok(th) = t_hat_fr_cf(fr, cf, py) {
                        if th > 0.0 {
                            println!("{fr} {cf} {th}");
                        }
                    }
                }
            }
        }
        ModeArg::Frgamma => {
            let g = args
                .gamma_max
                .ok_or_else(|| CliError::Usage("mode frgamma requires --gamma-max".into()))?;
            if args.py.is_some() {
                return Err(CliError::Usage("--py applies to mode frcf only".into()));
            }
            if !(g > 1.0 && g.is_finite()) {
                return Err(CliError::Usage(format!("--gamma-max must exceed 1, got {g}")));
            }
            println!("# mode=frgamma fixed=gamma_max={g} steps={steps}");
            for i in 1..=steps {
                let fr = i as f64 / steps as f64;
                for jj in 1..=steps {
                    let gamma = 1.0 + (g - 1.0) * jj as f64 / steps as f64;
                    if fr * gamma > 1.0 {
                        continue; // no table realizes this corner
                    }
                    if let Ok(th) = t_hat_fr_gamma(fr, gamma) {
                        if th > 0.0 {
                            println!("{fr} {gamma} {th}");
                        }
                    }
                }
            }
        }
    }
    Ok(0)
}
