use anyhow::Result;
use clap::Subcommand;
use framelab::bspline::{self, CellStatus, ScanOptions};
use rayon::prelude::*;
use serde_json::json;

use crate::inputs::float_grid;
use crate::output::{num, Outcome, Table};
use crate::Ctx;

#[derive(Subcommand, Debug)]
pub enum BsplineCmd {
    /// Values B_N(x) at the given points
    Eval {
        #[arg(long = "N", id = "n")]
        n: usize,
        /// Comma list or lo:hi:step
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Fourier transform ((1 - e^{-2 pi i g}) / (2 pi i g))^N, with a quadrature cross-check
    Fourier {
        #[arg(long = "N", id = "n")]
        n: usize,
        /// Comma list or lo:hi:step
        #[arg(long, allow_hyphen_values = true)]
        gamma: String,
    },
    /// Support, positivity, unit integral and partition of unity
    Props {
        #[arg(long = "N", id = "n")]
        n: usize,
    },
    /// Classify Gabor cells (a, b) for the window B_N.
    /// CSV columns: a,b,status,A,B,method
    Scan {
        #[arg(long = "N", id = "n")]
        n: usize,
        /// Comma list or lo:hi:step
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        /// Sample points per period of the periodized sums
        #[arg(long, default_value_t = 1024)]
        points: usize,
        /// Largest cyclic length for the finite-section cross-check (0 disables it)
        #[arg(long, default_value_t = 512)]
        max_len: usize,
    },
    /// Dual window h = sum_k c_k B_N(. + k) on the lattice (1, b)
    DualWindow {
        #[arg(long = "N", id = "n")]
        n: usize,
        #[arg(long)]
        b: f64,
        /// Coefficients run over k = -K..=K
        #[arg(long = "K", id = "k", default_value_t = 8)]
        k: usize,
    },
}

pub fn run(cmd: BsplineCmd, ctx: &Ctx) -> Result<Outcome> {
    match cmd {
        BsplineCmd::Eval { n, x } => {
            anyhow::ensure!(n >= 1, "B-spline order must be at least 1");
            let xs = float_grid(&x)?;
            let mut t = Table::new(&["x", "value"]);
            let vals: Vec<f64> = xs.iter().map(|&x| bspline::bspline_eval(n, x)).collect();
            for (x, v) in xs.iter().zip(&vals) {
                t.push(vec![num(*x), num(*v)]);
            }
            Ok(Outcome::value(&json!({"N": n, "x": xs, "values": vals}))?.with_table(t))
        }
        BsplineCmd::Fourier { n, gamma } => {
            anyhow::ensure!(n >= 1, "B-spline order must be at least 1");
            let gs = float_grid(&gamma)?;
            let mut t = Table::new(&["gamma", "re", "im", "quadrature_deviation"]);
            let mut worst: f64 = 0.0;
            let mut values = Vec::with_capacity(gs.len());
            for &g in &gs {
                let v = bspline::bspline_fourier(n, g);
                let dev = (v - bspline::bspline_fourier_quadrature(n, g)).norm();
                worst = worst.max(dev);
                values.push(v);
                t.push(vec![num(g), num(v.re), num(v.im), num(dev)]);
            }
            Ok(Outcome::value(&json!({
                "N": n,
                "gamma": gs,
                "values": values,
                "max_quadrature_deviation": worst,
            }))?
            .with_table(t))
        }
        BsplineCmd::Props { n } => {
            let rep = bspline::property_suite(n, ctx.tol)?;
            let v = rep.verdict;
            Ok(Outcome::value(&rep)?.with_verdict(v))
        }
        BsplineCmd::Scan {
            n,
            a,
            b,
            points,
            max_len,
        } => {
            let opts = ScanOptions {
                points_per_period: points,
                finite_section_max_len: max_len,
            };
            let bs = float_grid(&b)?;
            let cells: Vec<(f64, f64)> = float_grid(&a)?
                .into_iter()
                .flat_map(|a| bs.iter().map(move |&b| (a, b)))
                .collect();
            let res: Vec<_> = cells
                .par_iter()
                .map(|&(a, b)| bspline::scan_cell(n, a, b, &opts))
                .collect::<Result<_, _>>()?;
            let mut t = Table::new(&["a", "b", "status", "A", "B", "method"]);
            let (mut certified, mut zero, mut undecided) = (0usize, 0usize, 0usize);
            for c in &res {
                match c.status {
                    CellStatus::FrameCertified => certified += 1,
                    CellStatus::LowerBoundZeroCertified => zero += 1,
                    CellStatus::Undecided => undecided += 1,
                }
                let status = serde_json::to_value(c.status)?;
                t.push(vec![
                    num(c.a),
                    num(c.b),
                    status.as_str().unwrap_or_default().to_string(),
                    num(c.bounds_estimate.lower),
                    num(c.bounds_estimate.upper),
                    c.method.clone(),
                ]);
            }
            Ok(Outcome::value(&json!({
                "N": n,
                "cells": res,
                "frame_certified": certified,
                "lower_bound_zero_certified": zero,
                "undecided": undecided,
            }))?
            .with_table(t))
        }
        BsplineCmd::DualWindow { n, b, k } => {
            let d = bspline::dual_window_solve(n, b, k, ctx.tol)?;
            let v = d.report.verdict;
            let mut t = Table::new(&["k", "c_k"]);
            for (i, c) in &d.coefficients {
                t.push(vec![i.to_string(), num(*c)]);
            }
            Ok(Outcome::value(&json!({
                "N": n,
                "b": b,
                "coefficients": d.coefficients,
                "window": d.window,
                "report": d.report,
            }))?
            .with_table(t)
            .with_verdict(v))
        }
    }
}
