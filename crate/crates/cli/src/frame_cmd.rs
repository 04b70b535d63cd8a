use std::path::PathBuf;

use anyhow::Result;
use clap::{Args, Subcommand, ValueEnum};
use framelab::extension::{extend_to_dual_pair, verify_extension};
use framelab::frame::{self, Mode, VectorSystem};
use framelab::oracle::rayleigh_extremes;
use framelab::random::{orthonormal_basis, rng, system};
use framelab::rdual::{n_sequence, r_dual, verify_dual_pair_biorthogonality, verify_rdual_theorem, OrthonormalPair};
use framelab::{AnalysisReport, Verdict};
use rayon::prelude::*;
use serde_json::json;

use crate::inputs::read_system;
use crate::output::{num, Outcome, Table};
use crate::Ctx;

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Full,
    Span,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Full => Mode::FullSpace,
            ModeArg::Span => Mode::Span,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum FrameCmd {
    /// Optimal frame and Riesz bounds of a system (JSON or CSV file)
    Bounds {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "full")]
        mode: ModeArg,
    },
    /// Canonical dual and its reconstruction residual
    Dual {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "full")]
        mode: ModeArg,
    },
    /// Random systems: spectral bounds against a Rayleigh-quotient search.
    /// CSV columns: trial,dim,count,lower,upper,search_lower,search_upper,dual_residual
    Sweep {
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 4)]
        max_dim: usize,
        #[arg(long, default_value_t = 6)]
        max_vectors: usize,
        /// Random starts of the search
        #[arg(long, default_value_t = 64)]
        starts: usize,
        /// Allowed disagreement between spectrum and search
        #[arg(long, default_value_t = 1e-3)]
        search_tol: f64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PairArg {
    /// e = h = standard basis
    Standard,
    /// independent seeded random orthonormal bases
    Random,
}

fn pair(kind: PairArg, n: usize, seed: u64) -> Result<OrthonormalPair> {
    Ok(match kind {
        PairArg::Standard => OrthonormalPair::standard(n)?,
        PairArg::Random => {
            let mut r = rng(seed);
            OrthonormalPair::new(orthonormal_basis(&mut r, n), orthonormal_basis(&mut r, n))?
        }
    })
}

#[derive(Subcommand, Debug)]
pub enum RdualCmd {
    /// R-dual of a square system, involution and frame/Riesz bound transfer
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "standard")]
        pair: PairArg,
    },
    /// Dual frames iff the R-duals are biorthogonal
    Biortho {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
        #[arg(long, value_enum, default_value = "standard")]
        pair: PairArg,
    },
    /// The sequence n_i = sum_k <e_k, f_i> omega~_k built from f and omega
    Nseq {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        omega: PathBuf,
    },
    /// Random bases: involution, bound equality and verdict agreement.
    /// CSV columns: trial,involution,bound_gap,dual,biorthogonal,agree
    Sweep {
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 8)]
        dim: usize,
    },
}

#[derive(Args, Debug)]
pub struct ExtendArgs {
    /// Bessel sequence f
    #[arg(long)]
    f: PathBuf,
    /// Bessel sequence g
    #[arg(long)]
    g: PathBuf,
    /// Dual pair (a, b) used for the added vectors [default: standard basis]
    #[arg(long, requires = "b")]
    a: Option<PathBuf>,
    #[arg(long, requires = "a")]
    b: Option<PathBuf>,
}

fn report_outcome(rep: &AnalysisReport) -> Result<Outcome> {
    Ok(Outcome::value(rep)?.with_verdict(rep.verdict))
}

pub fn frame(cmd: FrameCmd, ctx: &Ctx) -> Result<Outcome> {
    match cmd {
        FrameCmd::Bounds { input, mode } => {
            let s = read_system(&input)?;
            let fb = frame::frame_bounds(&s, mode.into())?;
            let rb = if s.is_empty() { None } else { Some(frame::riesz_bounds(&s)?) };
            Outcome::value(&json!({
                "ambient_dim": s.ambient_dim(),
                "count": s.len(),
                "frame_bounds": fb,
                "riesz_bounds": rb,
                "is_frame": fb.is_frame(frame::NOT_A_FRAME_RATIO),
            }))
        }
        FrameCmd::Dual { input, mode } => {
            let s = read_system(&input)?;
            let d = frame::canonical_dual(&s, mode.into(), ctx.tol)?;
            let res = frame::reconstruction_residual(&s, &d, mode.into())?;
            let rep = AnalysisReport::from_residuals([("reconstruction", res)], ctx.tol);
            Ok(Outcome::value(&json!({ "dual": d, "report": rep }))?.with_verdict(rep.verdict))
        }
        FrameCmd::Sweep {
            trials,
            max_dim,
            max_vectors,
            starts,
            search_tol,
        } => {
            anyhow::ensure!(max_dim >= 1 && max_vectors >= 1, "max-dim and max-vectors must be positive");
            let rows: Vec<Result<[f64; 8]>> = ctx
                .seeds(trials)
                .into_par_iter()
                .enumerate()
                .map(|(i, seed)| {
                    let mut r = rng(seed);
                    let dim = 1 + (seed % max_dim as u64) as usize;
                    let count = 1 + ((seed >> 16) % max_vectors as u64) as usize;
                    let s = system(&mut r, dim, count);
                    let fb = frame::frame_bounds(&s, Mode::FullSpace)?;
                    let o = rayleigh_extremes(&mut r, &s, starts);
                    let d = frame::canonical_dual(&s, Mode::Span, ctx.tol)?;
                    let res = frame::reconstruction_residual(&s, &d, Mode::Span)?;
                    Ok([i as f64, dim as f64, count as f64, fb.lower, fb.upper, o.lower, o.upper, res])
                })
                .collect();
            let mut t = Table::new(&[
                "trial",
                "dim",
                "count",
                "lower",
                "upper",
                "search_lower",
                "search_upper",
                "dual_residual",
            ]);
            let (mut dev, mut dual): (f64, f64) = (0.0, 0.0);
            for row in rows {
                let v = row?;
                dev = dev.max((v[3] - v[5]).abs()).max((v[4] - v[6]).abs());
                dual = dual.max(v[7]);
                t.push(
                    v.iter()
                        .enumerate()
                        .map(|(k, x)| if k < 3 { format!("{}", *x as u64) } else { num(*x) })
                        .collect(),
                );
            }
            let ok = dev <= search_tol && dual <= ctx.tol;
            let v = if ok { Verdict::Pass } else { Verdict::Fail };
            Ok(Outcome::value(&json!({
                "trials": trials,
                "max_bound_deviation": dev,
                "max_dual_residual": dual,
                "search_tolerance": search_tol,
                "tolerance": ctx.tol,
            }))?
            .with_table(t)
            .with_verdict(v))
        }
    }
}

pub fn rdual(cmd: RdualCmd, ctx: &Ctx) -> Result<Outcome> {
    match cmd {
        RdualCmd::Verify { input, pair: kind } => {
            let f = read_system(&input)?;
            let p = pair(kind, f.len(), ctx.seed)?;
            let rep = verify_rdual_theorem(&f, &p, ctx.tol)?;
            let omega = r_dual(&f, &p)?;
            Ok(Outcome::value(&json!({ "omega": omega, "report": rep }))?.with_verdict(rep.verdict))
        }
        RdualCmd::Biortho { f, g, pair: kind } => {
            let f = read_system(&f)?;
            let g = read_system(&g)?;
            let p = pair(kind, f.len(), ctx.seed)?;
            report_outcome(&verify_dual_pair_biorthogonality(&f, &g, &p, ctx.tol)?)
        }
        RdualCmd::Nseq { f, omega } => {
            let f = read_system(&f)?;
            let omega = read_system(&omega)?;
            let e = VectorSystem::standard_basis(f.ambient_dim())?;
            let ns = n_sequence(&f, &omega, &e, ctx.tol)?;
            Outcome::value(&json!({
                "vectors": ns.vectors,
                "bounds": ns.tight_bound_estimate,
                "unit_tightness_residual": ns.unit_tightness_residual,
            }))
        }
        RdualCmd::Sweep { trials, dim } => {
            let rows: Vec<Result<(f64, f64, bool, bool, bool)>> = ctx
                .seeds(trials)
                .into_par_iter()
                .enumerate()
                .map(|(i, seed)| {
                    let mut r = rng(seed);
                    let p = OrthonormalPair::new(orthonormal_basis(&mut r, dim), orthonormal_basis(&mut r, dim))?;
                    let f = system(&mut r, dim, dim);
                    let th = verify_rdual_theorem(&f, &p, ctx.tol)?;
                    // even trials pair f with its canonical dual, odd ones with a random system
                    let g = if i % 2 == 0 {
                        frame::canonical_dual(&f, Mode::FullSpace, ctx.tol)?
                    } else {
                        system(&mut r, dim, dim)
                    };
                    let bo = verify_dual_pair_biorthogonality(&f, &g, &p, 1e-8)?;
                    Ok((
                        th.involution_residual,
                        th.bound_gap,
                        bo.metric("dual_frames") == Some(1.0),
                        bo.metric("biorthogonal") == Some(1.0),
                        bo.verdict == Verdict::Pass,
                    ))
                })
                .collect();
            let mut t = Table::new(&["trial", "involution", "bound_gap", "dual", "biorthogonal", "agree"]);
            let (mut inv, mut gap, mut agree): (f64, f64, usize) = (0.0, 0.0, 0);
            for (i, row) in rows.into_iter().enumerate() {
                let (a, b, d, o, ag) = row?;
                inv = inv.max(a);
                gap = gap.max(b);
                agree += usize::from(ag);
                t.push(vec![i.to_string(), num(a), num(b), d.to_string(), o.to_string(), ag.to_string()]);
            }
            let ok = inv <= 1e-12 && gap <= ctx.tol && agree == trials;
            Ok(Outcome::value(&json!({
                "trials": trials,
                "max_involution_residual": inv,
                "max_bound_gap": gap,
                "verdict_agreement": agree,
            }))?
            .with_table(t)
            .with_verdict(if ok { Verdict::Pass } else { Verdict::Fail }))
        }
    }
}

pub fn extend(args: ExtendArgs, ctx: &Ctx) -> Result<Outcome> {
    let f = read_system(&args.f)?;
    let g = read_system(&args.g)?;
    let (a, b) = match (&args.a, &args.b) {
        (Some(a), Some(b)) => (read_system(a)?, read_system(b)?),
        _ => {
            let e = VectorSystem::standard_basis(f.ambient_dim())?;
            (e.clone(), e)
        }
    };
    let ext = extend_to_dual_pair(&f, &g, &a, &b, ctx.tol)?;
    let rep = verify_extension(&f, &g, &ext.p_sys, &ext.q_sys, ctx.tol)?;
    Ok(Outcome::value(&json!({
        "p": ext.p_sys,
        "q": ext.q_sys,
        "p_is_zero": ext.p_is_zero,
        "report": rep,
    }))?
    .with_verdict(rep.verdict))
}
