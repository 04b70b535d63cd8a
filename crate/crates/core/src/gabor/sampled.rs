//! Gabor checks for compactly supported windows sampled on a uniform grid.

use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::gabor_extension_finite;
use crate::error::{FrameError, Result};
use crate::report::AnalysisReport;

/// Uniform samples `samples[i] = f(x0 + i * step)`; zero off the grid range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledWindow {
    pub x0: f64,
    pub step: f64,
    pub samples: Vec<Complex64>,
    /// Closed interval containing every nonzero sample.
    pub support_hint: (f64, f64),
}

/// A time-frequency point: modulation `lambda`, translation `mu`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TFPoint {
    pub lambda: f64,
    pub mu: f64,
}

impl TFPoint {
    pub fn new(lambda: f64, mu: f64) -> Self {
        Self { lambda, mu }
    }
}

const GRID_RTOL: f64 = 1e-9;

/// `x / step` as an integer, or a grid error if it is not one.
fn integral_ratio(x: f64, step: f64, what: &str) -> Result<i64> {
    let r = x / step;
    let n = r.round();
    if (r - n).abs() > GRID_RTOL * n.abs().max(1.0) {
        return Err(FrameError::Grid(format!(
            "{what} = {x} is not an integer multiple of the grid step {step}"
        )));
    }
    Ok(n as i64)
}

impl SampledWindow {
    pub fn new(x0: f64, step: f64, samples: Vec<Complex64>, support_hint: (f64, f64)) -> Result<Self> {
        let w = Self {
            x0,
            step,
            samples,
            support_hint,
        };
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.step > 0.0 && self.step.is_finite()) || !self.x0.is_finite() {
            return Err(FrameError::Domain(format!("bad grid: x0 = {}, step = {}", self.x0, self.step)));
        }
        if self.samples.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(FrameError::Domain("samples must be finite".into()));
        }
        let (lo, hi) = self.support_hint;
        if lo.is_nan() || hi.is_nan() || lo > hi {
            return Err(FrameError::Domain(format!("bad support hint [{lo}, {hi}]")));
        }
        let slack = 1e-9 * self.step;
        for (i, z) in self.samples.iter().enumerate() {
            let x = self.x(i);
            if *z != Complex64::new(0.0, 0.0) && (x < lo - slack || x > hi + slack) {
                return Err(FrameError::Domain(format!(
                    "nonzero sample at x = {x} outside support hint [{lo}, {hi}]"
                )));
            }
        }
        Ok(())
    }

    /// Samples `f` at `x0 + i step` for `i < count`.
    pub fn from_fn<F: Fn(f64) -> Complex64>(
        x0: f64,
        step: f64,
        count: usize,
        support_hint: (f64, f64),
        f: F,
    ) -> Result<Self> {
        let samples = (0..count).map(|i| f(x0 + i as f64 * step)).collect();
        Self::new(x0, step, samples, support_hint)
    }

    pub fn from_real_fn<F: Fn(f64) -> f64>(
        x0: f64,
        step: f64,
        count: usize,
        support_hint: (f64, f64),
        f: F,
    ) -> Result<Self> {
        Self::from_fn(x0, step, count, support_hint, |x| Complex64::new(f(x), 0.0))
    }

    /// Indicator of `[lo, hi)` on the grid `lo + i step`.
    pub fn indicator(lo: f64, hi: f64, step: f64) -> Result<Self> {
        let count = integral_ratio(hi - lo, step, "interval length")?;
        Self::new(lo, step, vec![Complex64::new(1.0, 0.0); count.max(0) as usize], (lo, hi))
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x0 + i as f64 * self.step
    }

    pub fn is_zero(&self) -> bool {
        self.samples.iter().all(|z| z.norm() == 0.0)
    }

    pub fn is_compact(&self) -> bool {
        self.support_hint.0.is_finite() && self.support_hint.1.is_finite()
    }

    /// Index of the first sample on the grid `step * Z` anchored at zero.
    pub fn grid_offset(&self) -> Result<i64> {
        integral_ratio(self.x0, self.step, "window origin")
    }

    /// Value at grid point `j * step`, given the precomputed grid offset.
    fn at(&self, offset: i64, j: i64) -> Complex64 {
        let i = j - offset;
        if i < 0 || i as usize >= self.samples.len() {
            Complex64::new(0.0, 0.0)
        } else {
            self.samples[i as usize]
        }
    }

    /// Piecewise-linear interpolation, zero outside the sampled range.
    pub fn interpolate(&self, x: f64) -> Complex64 {
        let n = self.samples.len();
        if n == 0 {
            return Complex64::new(0.0, 0.0);
        }
        let r = (x - self.x0) / self.step;
        let last = (n - 1) as f64;
        if r < -1e-12 || r > last + 1e-12 {
            return Complex64::new(0.0, 0.0);
        }
        let r = r.clamp(0.0, last);
        let i = (r.floor() as usize).min(n - 1);
        if i == n - 1 {
            return self.samples[i];
        }
        let t = r - i as f64;
        self.samples[i] * (1.0 - t) + self.samples[i + 1] * t
    }

    /// Riemann-sum `L^2` norm.
    pub fn norm(&self) -> f64 {
        (self.step * self.samples.iter().map(|z| z.norm_sqr()).sum::<f64>()).sqrt()
    }
}

fn common_grid(g: &SampledWindow, h: &SampledWindow) -> Result<f64> {
    g.validate()?;
    h.validate()?;
    if (g.step - h.step).abs() > GRID_RTOL * g.step {
        return Err(FrameError::Grid(format!(
            "windows use different steps ({} vs {})",
            g.step, h.step
        )));
    }
    for w in [g, h] {
        if !w.is_compact() {
            return Err(FrameError::Unsupported(format!(
                "support hint [{}, {}] is not compact",
                w.support_hint.0, w.support_hint.1
            )));
        }
    }
    Ok(g.step)
}

fn lattice_steps(a: f64, b: f64, step: f64) -> Result<(i64, i64)> {
    if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
        return Err(FrameError::Domain(format!("lattice parameters must be positive (a = {a}, b = {b})")));
    }
    let a_steps = integral_ratio(a, step, "a")?;
    let p_steps = integral_ratio(1.0 / b, step, "1/b")?;
    Ok((a_steps, p_steps))
}

/// `max_x |r_n(x) - b delta_{n,0}|` for every `n` that can be nonzero, where
/// `r_n(x) = sum_k conj(g(x - n/b - k a)) h(x - k a)` on the grid of `[0, a)`.
pub fn ron_shen_residuals(g: &SampledWindow, h: &SampledWindow, a: f64, b: f64) -> Result<Vec<(i64, f64)>> {
    let step = common_grid(g, h)?;
    let (a_steps, p_steps) = lattice_steps(a, b, step)?;
    let (og, oh) = (g.grid_offset()?, h.grid_offset()?);
    let n_lo = ((h.support_hint.0 - g.support_hint.1) * b).floor() as i64;
    let n_hi = ((h.support_hint.1 - g.support_hint.0) * b).ceil() as i64;
    let h_len = h.samples.len() as i64;
    let mut out = Vec::with_capacity((n_hi - n_lo + 1).max(0) as usize);
    for n in n_lo..=n_hi {
        let target = if n == 0 { b } else { 0.0 };
        let mut worst: f64 = 0.0;
        for j in 0..a_steps {
            // k such that h's sample index j - k a_steps - oh is in range
            let k_lo = Integer::div_ceil(&(j - oh - h_len + 1), &a_steps);
            let k_hi = Integer::div_floor(&(j - oh), &a_steps);
            let mut r = Complex64::new(0.0, 0.0);
            for k in k_lo..=k_hi {
                let x = j - k * a_steps;
                r += g.at(og, x - n * p_steps).conj() * h.at(oh, x);
            }
            worst = worst.max((r - target).norm());
        }
        out.push((n, worst));
    }
    Ok(out)
}

pub fn ron_shen_duality_check(
    g: &SampledWindow,
    h: &SampledWindow,
    a: f64,
    b: f64,
    tolerance: f64,
) -> Result<AnalysisReport> {
    let per_n = ron_shen_residuals(g, h, a, b)?;
    let (worst_n, worst) = per_n
        .iter()
        .copied()
        .fold((0, 0.0f64), |acc, (n, r)| if r > acc.1 { (n, r) } else { acc });
    let mut rep = AnalysisReport::from_residuals([("ron_shen", worst)], tolerance)
        .with_metric("n_checked", per_n.len() as f64);
    if worst > tolerance {
        rep = rep.with_note(format!("largest deviation at n = {worst_n}"));
    }
    Ok(rep)
}

#[derive(Debug, Clone)]
pub struct SampledExtension {
    pub g2: SampledWindow,
    pub h2: SampledWindow,
    /// Duality residual of the two union systems in the cyclic realization.
    pub union_duality_residual: f64,
    pub g2_is_zero: bool,
    /// Length, time step and frequency step of the cyclic realization.
    pub cyclic_lattice: (usize, usize, usize),
}

/// Extension of sampled windows through a cyclic realization: the grid is
/// wrapped to length `L`, a multiple of `a/h` and `1/(bh)` covering both
/// supports plus one frequency period, so `a` and `b` become divisors of `L`.
pub fn gabor_extension(g1: &SampledWindow, h1: &SampledWindow, a: f64, b: f64) -> Result<SampledExtension> {
    let step = common_grid(g1, h1)?;
    if a * b > 1.0 + 1e-12 {
        return Err(FrameError::Infeasible(format!(
            "a b = {} > 1: no dual pair exists on this lattice",
            a * b
        )));
    }
    let (a_steps, p_steps) = lattice_steps(a, b, step)?;
    let (og, oh) = (g1.grid_offset()?, h1.grid_offset()?);
    let start = og.min(oh);
    let end = (og + g1.samples.len() as i64).max(oh + h1.samples.len() as i64);
    let span = (end - start) + p_steps;
    let unit = a_steps.lcm(&p_steps);
    let l = (Integer::div_ceil(&span, &unit) * unit) as usize;
    let scale = step.sqrt();
    let wrap = |w: &SampledWindow, off: i64| -> Vec<Complex64> {
        let mut v = vec![Complex64::new(0.0, 0.0); l];
        for (i, z) in w.samples.iter().enumerate() {
            let t = (off - start + i as i64) as usize;
            v[t % l] += z * scale;
        }
        v
    };
    let (a_fin, b_fin) = (a_steps as usize, l / p_steps as usize);
    let ext = gabor_extension_finite(l, a_fin, b_fin, &wrap(g1, og), &wrap(h1, oh))?;
    let x0 = start as f64 * step;
    let hint = (x0, x0 + (l - 1) as f64 * step);
    let unwrap = |v: Vec<Complex64>| SampledWindow::new(x0, step, v.into_iter().map(|z| z / scale).collect(), hint);
    Ok(SampledExtension {
        g2: unwrap(ext.g2)?,
        h2: unwrap(ext.h2)?,
        union_duality_residual: ext.union_duality_residual,
        g2_is_zero: ext.g2_is_zero,
        cyclic_lattice: (l, a_fin, b_fin),
    })
}
