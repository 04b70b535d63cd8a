use std::f64::consts::PI;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Subcommand};
use framelab::bspline::bspline_eval;
use framelab::gabor::{
    self, divisors, GaborSpec, SampledWindow, HRT_CAVEAT,
};
use framelab::random::{rng, unit_window};
use framelab::{AnalysisReport, Verdict};
use rayon::prelude::*;
use serde_json::json;

use crate::inputs::{read_json, tf_points, usize_list, window};
use crate::output::{num, Outcome, Table};
use crate::Ctx;

/// A finite Gabor system on Z_L.
#[derive(Args, Debug, Clone)]
pub struct SpecArgs {
    /// JSON file with {"L", "a", "b", "window": [[re, im], ...]}
    #[arg(long, conflicts_with_all = ["l", "a", "b", "window"])]
    spec: Option<PathBuf>,
    #[arg(long = "L", id = "l")]
    l: Option<usize>,
    /// Time step, a divisor of L
    #[arg(long)]
    a: Option<usize>,
    /// Frequency step, a divisor of L
    #[arg(long)]
    b: Option<usize>,
    /// random | gaussian | box:K | path to a JSON list of [re, im]
    #[arg(long, default_value = "random")]
    window: String,
}

impl SpecArgs {
    fn load(&self, seed: u64) -> Result<GaborSpec> {
        if let Some(p) = &self.spec {
            let s: GaborSpec = read_json(p)?;
            s.validate()?;
            return Ok(s);
        }
        let (Some(l), Some(a), Some(b)) = (self.l, self.a, self.b) else {
            bail!("give --spec or all of --L, --a and --b");
        };
        Ok(GaborSpec::new(l, a, b, window(&self.window, l, seed)?)?)
    }
}

/// A compactly supported window on a uniform grid.
#[derive(Args, Debug, Clone)]
pub struct SampledArgs {
    /// Grid step
    #[arg(long, default_value_t = 1.0 / 256.0)]
    step: f64,
}

/// `box:lo,hi` | `bspline:N` | `gaussian` | JSON file with a sampled window.
fn sampled(spec: &str, step: f64) -> Result<SampledWindow> {
    if let Some(r) = spec.strip_prefix("box:") {
        let v = crate::inputs::float_list(r)?;
        let [lo, hi] = v.as_slice() else {
            bail!("box:lo,hi expected, got {spec:?}");
        };
        return Ok(SampledWindow::indicator(*lo, *hi, step)?);
    }
    if let Some(n) = spec.strip_prefix("bspline:") {
        let n: usize = n.parse().context("bspline:N needs an integer order")?;
        if n == 0 {
            bail!("B-spline order must be at least 1");
        }
        let count = (n as f64 / step).round() as usize + 1;
        return Ok(SampledWindow::from_real_fn(0.0, step, count, (0.0, n as f64), |x| bspline_eval(n, x))?);
    }
    if spec == "gaussian" {
        let half = 6.0;
        let count = (2.0 * half / step).round() as usize + 1;
        return Ok(SampledWindow::from_real_fn(-half, step, count, (-half, half), |x| (-PI * x * x).exp())?);
    }
    let w: SampledWindow = read_json(std::path::Path::new(spec))?;
    w.validate()?;
    Ok(w)
}

#[derive(Subcommand, Debug)]
pub enum GaborCmd {
    /// Optimal frame bounds of the system
    Bounds(SpecArgs),
    /// Duality principle: frame bounds on (a, b) against Riesz bounds of the
    /// adjoint system on (L/b, L/a) with window scaled by sqrt(L/(ab))
    Duality(SpecArgs),
    /// Wexler-Raz: two windows give dual frames iff their adjoint systems are biorthogonal
    WexlerRaz {
        #[command(flatten)]
        g: SpecArgs,
        /// Second window [default: canonical dual of the first]
        #[arg(long)]
        h: Option<String>,
    },
    /// The inverse frame operator commutes with the lattice operators
    Commute {
        #[command(flatten)]
        spec: SpecArgs,
        /// Test against operators of another lattice "a,b" (negative control)
        #[arg(long)]
        foreign: Option<String>,
    },
    /// Ron-Shen duality of two compactly supported windows on L^2(R)
    RonShen {
        /// box:lo,hi | bspline:N | gaussian | JSON file
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[command(flatten)]
        grid: SampledArgs,
    },
    /// Extend two Bessel windows to a pair of dual Gabor frames
    Extend {
        /// Finite case: lattice and windows g1 (window flags), h1 (--h)
        #[command(flatten)]
        g: SpecArgs,
        /// Window h1 for the finite case [default: same spec as g1 with seed + 1]
        #[arg(long)]
        h: Option<String>,
    },
    /// Extend sampled windows on L^2(R) to dual Gabor frames
    ExtendSampled {
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[command(flatten)]
        grid: SampledArgs,
    },
    /// Linear independence probe of finitely many time-frequency shifts
    /// (numerical evidence only, never a proof)
    Hrt {
        /// box:lo,hi | bspline:N | gaussian | JSON file
        #[arg(long, default_value = "gaussian")]
        window: String,
        /// Points "lambda,mu;lambda,mu;..." [default: the 2x2 lattice {0,1}^2]
        #[arg(long, default_value = "0,0;0,1;1,0;1,1")]
        points: String,
        #[arg(long, default_value_t = 1.0 / 64.0)]
        step: f64,
        /// Threshold on the smallest singular value [default: 1e-8 sqrt(count)]
        #[arg(long)]
        threshold: Option<f64>,
    },
    /// All divisor lattices of each L with random windows: duality principle,
    /// Wexler-Raz and commutation.
    /// CSV columns: L,a,b,lowerA,upperB,adjoint_lower,adjoint_upper,residual,wexler_raz,commutator
    Sweep {
        /// Comma list of lengths
        #[arg(long = "L", default_value = "4,6,8,12,16,24")]
        lengths: String,
        /// Random windows per lattice
        #[arg(long, default_value_t = 20)]
        windows: usize,
        /// Lower bound below which commutation is not tested
        #[arg(long, default_value_t = 1e-6)]
        min_lower: f64,
    },
}

fn outcome(rep: AnalysisReport) -> Result<Outcome> {
    let v = rep.verdict;
    Ok(Outcome::value(&rep)?.with_verdict(v))
}

pub fn run(cmd: GaborCmd, ctx: &Ctx) -> Result<Outcome> {
    match cmd {
        GaborCmd::Bounds(s) => {
            let spec = s.load(ctx.seed)?;
            let fb = gabor::gabor_frame_bounds(&spec)?;
            Outcome::value(&json!({
                "L": spec.l,
                "a": spec.a,
                "b": spec.b,
                "bounds": fb,
                "redundancy": spec.size() as f64 / spec.l as f64,
            }))
        }
        GaborCmd::Duality(s) => outcome(gabor::duality_principle_check(&s.load(ctx.seed)?, ctx.tol)?),
        GaborCmd::WexlerRaz { g, h } => {
            let gs = g.load(ctx.seed)?;
            let hs = match h {
                Some(w) => gs.with_window(window(&w, gs.l, ctx.seed.wrapping_add(1))?)?,
                None => gabor::canonical_dual_window(&gs, ctx.tol)?,
            };
            outcome(gabor::wexler_raz_check(&gs, &hs, ctx.tol)?)
        }
        GaborCmd::Commute { spec, foreign } => {
            let s = spec.load(ctx.seed)?;
            match foreign {
                Some(f) => {
                    let v = usize_list(&f)?;
                    let [a, b] = v.as_slice() else {
                        bail!("--foreign expects a,b");
                    };
                    outcome(gabor::foreign_lattice_commutation_check(&s, *a, *b, ctx.tol)?)
                }
                None => outcome(gabor::frame_operator_commutation_check(&s, ctx.tol)?),
            }
        }
        GaborCmd::RonShen { g, h, a, b, grid } => {
            let gw = sampled(&g, grid.step)?;
            let hw = sampled(&h, grid.step)?;
            outcome(gabor::ron_shen_duality_check(&gw, &hw, a, b, ctx.tol)?)
        }
        GaborCmd::Extend { g, h } => {
            let gs = g.load(ctx.seed)?;
            let h1 = match h {
                Some(w) => window(&w, gs.l, ctx.seed.wrapping_add(1))?,
                None => window(&g.window, gs.l, ctx.seed.wrapping_add(1))?,
            };
            let ext = gabor::gabor_extension_finite(gs.l, gs.a, gs.b, &gs.window, &h1)?;
            let rep = AnalysisReport::from_residuals([("union_duality", ext.union_duality_residual)], ctx.tol)
                .with_metric("g2_is_zero", f64::from(u8::from(ext.g2_is_zero)));
            let v = rep.verdict;
            Ok(Outcome::value(&json!({
                "g2": ext.g2,
                "h2": ext.h2,
                "report": rep,
            }))?
            .with_verdict(v))
        }
        GaborCmd::ExtendSampled { g, h, a, b, grid } => {
            let gw = sampled(&g, grid.step)?;
            let hw = sampled(&h, grid.step)?;
            let ext = gabor::gabor_extension(&gw, &hw, a, b)?;
            let rep = AnalysisReport::from_residuals([("union_duality", ext.union_duality_residual)], ctx.tol)
                .with_metric("g2_is_zero", f64::from(u8::from(ext.g2_is_zero)));
            let v = rep.verdict;
            let (l, ca, cb) = ext.cyclic_lattice;
            Ok(Outcome::value(&json!({
                "g2": ext.g2,
                "h2": ext.h2,
                "cyclic_lattice": {"L": l, "a": ca, "b": cb},
                "report": rep,
            }))?
            .with_verdict(v))
        }
        GaborCmd::Hrt {
            window,
            points,
            step,
            threshold,
        } => {
            let w = sampled(&window, step)?;
            let pts = tf_points(&points)?;
            let rep = gabor::hrt_independence(&w, &pts, threshold)?;
            debug_assert!(rep.notes.contains(HRT_CAVEAT));
            outcome(rep)
        }
        GaborCmd::Sweep {
            lengths,
            windows,
            min_lower,
        } => sweep(&usize_list(&lengths)?, windows, min_lower, ctx),
    }
}

struct Row {
    l: usize,
    a: usize,
    b: usize,
    lower: f64,
    upper: f64,
    adj_lower: f64,
    adj_upper: f64,
    gap: f64,
    wexler_raz: bool,
    commutator: Option<f64>,
}

fn sweep(lengths: &[usize], windows: usize, min_lower: f64, ctx: &Ctx) -> Result<Outcome> {
    let mut jobs = Vec::new();
    for &l in lengths {
        if l == 0 {
            bail!("L must be positive");
        }
        for a in divisors(l) {
            for b in divisors(l) {
                for _ in 0..windows {
                    jobs.push((l, a, b));
                }
            }
        }
    }
    let seeds = ctx.seeds(jobs.len());
    let rows: Vec<Result<Row>> = jobs
        .into_par_iter()
        .zip(seeds)
        .map(|((l, a, b), seed)| {
            let mut r = rng(seed);
            let spec = GaborSpec::new(l, a, b, unit_window(&mut r, l))?;
            let dp = gabor::duality_principle_check(&spec, ctx.tol)?;
            let metric = |k: &str| dp.metric(k).unwrap_or(f64::NAN);
            let (lower, upper) = (metric("lower"), metric("upper"));
            // Wexler-Raz: canonical dual where it exists, a random window otherwise
            let h = if lower >= min_lower {
                gabor::canonical_dual_window(&spec, ctx.tol)?
            } else {
                spec.with_window(unit_window(&mut r, l))?
            };
            let wr = gabor::wexler_raz_check(&spec, &h, ctx.tol)?;
            let commutator = if lower >= min_lower {
                Some(gabor::commutation_residual(&spec, a, b, ctx.tol)?)
            } else {
                None
            };
            Ok(Row {
                l,
                a,
                b,
                lower,
                upper,
                adj_lower: metric("adjoint_lower"),
                adj_upper: metric("adjoint_upper"),
                gap: dp.residual("relative_gap").unwrap_or(f64::NAN),
                wexler_raz: wr.verdict == Verdict::Pass,
                commutator,
            })
        })
        .collect();
    let mut t = Table::new(&[
        "L",
        "a",
        "b",
        "lowerA",
        "upperB",
        "adjoint_lower",
        "adjoint_upper",
        "residual",
        "wexler_raz",
        "commutator",
    ]);
    let (mut worst_gap, mut worst_comm, mut dp_fail, mut wr_fail, mut comm_fail, mut n) =
        (0.0f64, 0.0f64, 0usize, 0usize, 0usize, 0usize);
    for row in rows {
        let r = row?;
        n += 1;
        worst_gap = worst_gap.max(r.gap);
        dp_fail += usize::from(!(r.gap <= ctx.tol));
        wr_fail += usize::from(!r.wexler_raz);
        if let Some(c) = r.commutator {
            worst_comm = worst_comm.max(c);
            comm_fail += usize::from(!(c <= ctx.tol));
        }
        t.push(vec![
            r.l.to_string(),
            r.a.to_string(),
            r.b.to_string(),
            num(r.lower),
            num(r.upper),
            num(r.adj_lower),
            num(r.adj_upper),
            num(r.gap),
            r.wexler_raz.to_string(),
            r.commutator.map(num).unwrap_or_default(),
        ]);
    }
    let failures = dp_fail + wr_fail + comm_fail;
    Ok(Outcome::value(&json!({
        "instances": n,
        "max_relative_gap": worst_gap,
        "max_commutator": worst_comm,
        "duality_failures": dp_fail,
        "wexler_raz_failures": wr_fail,
        "commutation_failures": comm_fail,
    }))?
    .with_table(t)
    .with_verdict(if failures == 0 { Verdict::Pass } else { Verdict::Fail }))
}
