//! Numerical probe of linear independence of finite time-frequency families.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::sampled::{SampledWindow, TFPoint};
use crate::error::{FrameError, Result};
use crate::linalg::{self, CMatrix};
use crate::report::{AnalysisReport, Verdict};

pub const HRT_CAVEAT: &str = "numerical evidence only, not a proof: a large smallest singular value \
indicates independence on the sampled grid, and a small one cannot establish dependence";

fn check_points(points: &[TFPoint]) -> Result<()> {
    if points.is_empty() {
        return Err(FrameError::Precondition("no time-frequency points".into()));
    }
    for (i, p) in points.iter().enumerate() {
        if !p.lambda.is_finite() || !p.mu.is_finite() {
            return Err(FrameError::Domain(format!("point {i} is not finite")));
        }
        if points[..i].iter().any(|q| q == p) {
            return Err(FrameError::Precondition(format!(
                "duplicate point ({}, {})",
                p.lambda, p.mu
            )));
        }
    }
    Ok(())
}

/// Probe with the window given as a function supported in `support`.
/// Vectors `exp(2 pi i lambda x) g(x - mu)` are sampled with `step` on a grid
/// covering every translate, normalized, and the smallest singular value of
/// the resulting matrix is compared against `tolerance` (default
/// `1e-8 sqrt(count)`).
pub fn hrt_independence_fn<F: Fn(f64) -> Complex64>(
    g: F,
    support: (f64, f64),
    step: f64,
    points: &[TFPoint],
    tolerance: Option<f64>,
) -> Result<AnalysisReport> {
    check_points(points)?;
    if !(step > 0.0) || !(support.0 < support.1) || !support.0.is_finite() || !support.1.is_finite() {
        return Err(FrameError::Domain("need a positive step and a finite, nonempty support".into()));
    }
    let mu_lo = points.iter().map(|p| p.mu).fold(f64::INFINITY, f64::min);
    let mu_hi = points.iter().map(|p| p.mu).fold(f64::NEG_INFINITY, f64::max);
    let lo = support.0 + mu_lo;
    let hi = support.1 + mu_hi;
    let rows = ((hi - lo) / step).ceil() as usize + 1;
    let count = points.len();
    let mut m = CMatrix::zeros(rows, count);
    for (c, p) in points.iter().enumerate() {
        for r in 0..rows {
            let x = lo + r as f64 * step;
            m[(r, c)] = Complex64::from_polar(1.0, 2.0 * PI * p.lambda * x) * g(x - p.mu);
        }
        let n = m.column(c).norm();
        if n == 0.0 {
            return Err(FrameError::Precondition("window vanishes on the sampling grid".into()));
        }
        m.column_mut(c).unscale_mut(n);
    }
    let sv = linalg::singular_values(&m);
    let sigma_min = sv[0];
    let tol = tolerance.unwrap_or(1e-8 * (count as f64).sqrt());
    let verdict = if sigma_min > tol { Verdict::Pass } else { Verdict::Undecided };
    let outcome = if sigma_min > tol {
        "numerically independent"
    } else {
        "numerically near-dependent"
    };
    Ok(AnalysisReport::new(verdict, tol)
        .with_metric("sigma_min", sigma_min)
        .with_metric("sigma_max", *sv.last().expect("count > 0"))
        .with_metric("points", count as f64)
        .with_note(outcome)
        .with_note(HRT_CAVEAT))
}

/// Probe with a sampled window, evaluated off-grid by linear interpolation.
pub fn hrt_independence(g: &SampledWindow, points: &[TFPoint], tolerance: Option<f64>) -> Result<AnalysisReport> {
    g.validate()?;
    if g.is_zero() {
        return Err(FrameError::Precondition("window is identically zero".into()));
    }
    if !g.is_compact() {
        return Err(FrameError::Unsupported("window support hint must be compact".into()));
    }
    let last = g.x(g.samples.len().saturating_sub(1));
    let support = (g.support_hint.0.max(g.x0), g.support_hint.1.min(last));
    if !(support.0 < support.1) {
        return Err(FrameError::Domain("window support is a single point".into()));
    }
    hrt_independence_fn(|x| g.interpolate(x), support, g.step, points, tolerance)
}
