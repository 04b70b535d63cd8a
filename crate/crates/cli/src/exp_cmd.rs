use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::{Subcommand, ValueEnum};
use framelab::exponentials::{self, Family, LambdaSet};
use framelab::Verdict;
use serde_json::json;

use crate::inputs::{float_list, read_json};
use crate::output::{num, Outcome, Table};
use crate::Ctx;

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FamilyArg {
    /// {0, 1/2, 1, ...}
    Half,
    /// {0, 1, 2, ...}
    Integer,
}

fn lambda_set(lambdas: &Option<String>, file: &Option<PathBuf>) -> Result<LambdaSet> {
    match (lambdas, file) {
        (Some(s), None) => Ok(LambdaSet::new(float_list(s)?)?),
        (None, Some(p)) => read_json(p),
        _ => bail!("give exactly one of --lambdas and --input"),
    }
}

#[derive(Subcommand, Debug)]
pub enum ExpCmd {
    /// Gram matrix G_jk = int e^{i(l_j - l_k)x} dx over (-pi, pi)
    Gram {
        /// Comma list of distinct reals
        #[arg(long, allow_hyphen_values = true)]
        lambdas: Option<String>,
        /// JSON file {"lambdas": [...]}
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Optimal lower frame bound, the smallest Gram eigenvalue, in high precision
    Bound {
        #[arg(long, allow_hyphen_values = true)]
        lambdas: Option<String>,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// The explicit estimate 1.6e-14 (delta/2)^{2N+1} / ((N+1)!)^8
    Crude {
        #[arg(long = "N", id = "n")]
        n: usize,
        /// Separation, 0 < delta <= 1
        #[arg(long)]
        delta: f64,
    },
    /// Lower bounds of the sections N = 1..=n-max against the estimate.
    /// CSV columns: N,lower_bound,crude_log10,log10_ratio
    Decay {
        #[arg(long, value_enum, default_value = "half")]
        family: FamilyArg,
        #[arg(long, default_value_t = 40)]
        n_max: usize,
    },
}

pub fn run(cmd: ExpCmd, _ctx: &Ctx) -> Result<Outcome> {
    match cmd {
        ExpCmd::Gram { lambdas, input } => {
            let ls = lambda_set(&lambdas, &input)?;
            let g = exponentials::exp_gram(&ls);
            let n = ls.len();
            let rows: Vec<Vec<[f64; 2]>> = (0..n)
                .map(|j| (0..n).map(|k| [g[(j, k)].re, g[(j, k)].im]).collect())
                .collect();
            Outcome::value(&json!({"lambdas": ls.lambdas(), "gram": rows}))
        }
        ExpCmd::Bound { lambdas, input } => {
            let ls = lambda_set(&lambdas, &input)?;
            let lb = exponentials::lower_bound_report(&ls)?;
            Outcome::value(&json!({"lambdas": ls.lambdas(), "lower_bound": lb}))
        }
        ExpCmd::Crude { n, delta } => {
            let c = exponentials::crude_bound(n, delta)?;
            Outcome::value(&json!({"N": n, "delta": delta, "value": c.value, "log10": c.log10}))
        }
        ExpCmd::Decay { family, n_max } => {
            anyhow::ensure!(n_max >= 1, "n-max must be at least 1");
            let fam = match family {
                FamilyArg::Half => Family::half_integers(),
                FamilyArg::Integer => Family::integers(),
            };
            let study = exponentials::decay_study(&fam, n_max)?;
            let mut t = Table::new(&["N", "lower_bound", "crude_log10", "log10_ratio"]);
            for r in &study.rows {
                t.push(vec![r.n.to_string(), num(r.lower_bound), num(r.crude_log10), num(r.log10_ratio)]);
            }
            let v = if study.crude_below_exact {
                Verdict::Pass
            } else {
                Verdict::Fail
            };
            Ok(Outcome::value(&json!({"family": fam, "study": study}))?
                .with_table(t)
                .with_verdict(v))
        }
    }
}
