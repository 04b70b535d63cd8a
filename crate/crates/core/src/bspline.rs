//! B-splines `B_N = chi_[0,1) * ... * chi_[0,1)`, their Fourier transform,
//! Gabor frame certificates over an `(a, b)` grid, and dual windows built
//! from finitely many shifts of `B_N`.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::dilation::{wave_packet_sums, CSet, FreqFunction, UniformGrid, WavePacketGrid};
use crate::error::{FrameError, Result};
use crate::frame::FrameBounds;
use crate::gabor::{gabor_frame_bounds, ron_shen_duality_check, GaborSpec, SampledWindow};
use crate::quad::GaussLegendre;
use crate::report::AnalysisReport;

/// `B_N(x)` by the order-raising recurrence
/// `B_n(x) = (x B_{n-1}(x) + (n - x) B_{n-1}(x - 1)) / (n - 1)`.
/// `B_1` is the indicator of `[0, 1)`.
pub fn bspline_eval(n: usize, x: f64) -> f64 {
    assert!(n >= 1, "B-spline order must be at least 1");
    if !(x >= 0.0 && x < n as f64) {
        return 0.0;
    }
    // vals[k] = B_m(x - k)
    let mut vals: Vec<f64> = (0..n)
        .map(|k| {
            let y = x - k as f64;
            if (0.0..1.0).contains(&y) {
                1.0
            } else {
                0.0
            }
        })
        .collect();
    for m in 2..=n {
        let mf = m as f64;
        for k in 0..=(n - m) {
            let y = x - k as f64;
            vals[k] = (y * vals[k] + (mf - y) * vals[k + 1]) / (mf - 1.0);
        }
    }
    vals[0]
}

/// `B_N(x) = (1/(N-1)!) sum_k (-1)^k C(N,k) (x - k)_+^{N-1}`.
pub fn truncated_power(n: usize, x: f64) -> f64 {
    assert!(n >= 1);
    if n == 1 {
        return if (0.0..1.0).contains(&x) { 1.0 } else { 0.0 };
    }
    if !(x > 0.0 && x < n as f64) {
        return 0.0;
    }
    let mut binom = 1.0;
    let mut fact = 1.0;
    for k in 1..n {
        fact *= k as f64;
    }
    let mut s = 0.0;
    for k in 0..=n {
        let y = x - k as f64;
        if y > 0.0 {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            s += sign * binom * y.powi(n as i32 - 1);
        }
        binom = binom * (n - k) as f64 / (k + 1) as f64;
    }
    s / fact
}

/// `((1 - e^{-2 pi i g}) / (2 pi i g))^N`, evaluated as
/// `(e^{-i pi g} sin(pi g) / (pi g))^N`; exactly 1 at 0 and 0 at other integers.
pub fn bspline_fourier(n: usize, gamma: f64) -> Complex64 {
    if gamma == 0.0 {
        return Complex64::new(1.0, 0.0);
    }
    if gamma.fract() == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let t = PI * gamma;
    let base = Complex64::from_polar(t.sin() / t, -t);
    base.powu(n as u32)
}

/// `int B_N(x) e^{-2 pi i x g} dx` by Gauss-Legendre on each unit piece.
pub fn bspline_fourier_quadrature(n: usize, gamma: f64) -> Complex64 {
    let rule = GaussLegendre::new(16);
    let panels = 4 + (2.0 * gamma.abs()).ceil() as usize;
    (0..n)
        .map(|p| {
            rule.integrate_complex(
                |x| Complex64::from_polar(bspline_eval(n, x), -2.0 * PI * x * gamma),
                p as f64,
                p as f64 + 1.0,
                panels,
            )
        })
        .sum()
}

/// Numeric convolution oracle: `B_N = B_{N-1} * chi_[0,1)` by the trapezoid
/// rule on grids of step `1/64 ... 1/512`, starting from exact samples of the
/// hat `B_2`, followed by Richardson extrapolation in `h^2`. Values are
/// available at multiples of `1/64`.
#[derive(Debug, Clone)]
pub struct ConvolutionOracle {
    order: usize,
    values: Vec<f64>,
}

pub const ORACLE_DENSITY: usize = 64;

impl ConvolutionOracle {
    pub fn new(order: usize) -> Self {
        assert!(order >= 1);
        let base = ORACLE_DENSITY;
        if order <= 2 {
            let values = (0..=order * base)
                .map(|i| {
                    let x = i as f64 / base as f64;
                    if order == 1 {
                        if x < 1.0 {
                            1.0
                        } else {
                            0.0
                        }
                    } else {
                        x.min(2.0 - x)
                    }
                })
                .collect();
            return Self { order, values };
        }
        let mut levels: Vec<Vec<f64>> = [1, 2, 4, 8]
            .iter()
            .map(|&f| {
                let m = base * f;
                let fine = trapezoid_chain(order, m);
                fine.iter().step_by(f).copied().collect()
            })
            .collect();
        let mut p = 4.0;
        while levels.len() > 1 {
            levels = levels
                .windows(2)
                .map(|w| w[0].iter().zip(&w[1]).map(|(c, f)| (p * f - c) / (p - 1.0)).collect())
                .collect();
            p *= 4.0;
        }
        Self {
            order,
            values: levels.pop().expect("one level left"),
        }
    }

    /// Value at `i / 64`.
    pub fn at_index(&self, i: i64) -> f64 {
        if i < 0 || i as usize >= self.values.len() {
            0.0
        } else {
            self.values[i as usize]
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }
}

fn trapezoid_chain(order: usize, m: usize) -> Vec<f64> {
    let h = 1.0 / m as f64;
    let mut s: Vec<f64> = (0..=2 * m).map(|i| (i as f64 * h).min(2.0 - i as f64 * h)).collect();
    for n in 3..=order {
        let len = n * m + 1;
        let mut f = s.clone();
        f.resize(len, 0.0);
        let mut prefix = vec![0.0; len + 1];
        for i in 0..len {
            prefix[i + 1] = prefix[i] + f[i];
        }
        s = (0..len)
            .map(|i| {
                let lo = i.saturating_sub(m);
                let mut tot = prefix[i + 1] - prefix[lo] - 0.5 * f[i];
                if i >= m {
                    tot -= 0.5 * f[i - m];
                }
                h * tot
            })
            .collect();
    }
    s
}

/// `max_x |sum_k B_N(x - k spacing) - 1|` over a grid of `[0, N]`.
/// With spacing 1 this is the partition-of-unity defect.
pub fn partition_residual(n: usize, spacing: f64) -> f64 {
    let steps = 64 * n;
    let k_max = (n as f64 / spacing).ceil() as i64 + 2;
    (0..=steps)
        .map(|i| {
            let x = i as f64 / 64.0;
            let s: f64 = (-k_max..=k_max).map(|k| bspline_eval(n, x - k as f64 * spacing)).sum();
            (s - 1.0).abs()
        })
        .fold(0.0, f64::max)
}

/// Support, positivity, unit integral and partition of unity.
pub fn property_suite(n: usize, tolerance: f64) -> Result<AnalysisReport> {
    if n == 0 {
        return Err(FrameError::Domain("B-spline order must be at least 1".into()));
    }
    let nf = n as f64;
    let outside = (-128..0)
        .chain((64 * n as i64)..(64 * n as i64 + 128))
        .map(|i| bspline_eval(n, i as f64 / 64.0).abs())
        .fold(0.0, f64::max);
    let nonpositive = (1..64 * n).filter(|&i| bspline_eval(n, i as f64 / 64.0) <= 0.0).count();
    let rule = GaussLegendre::new(12);
    let integral: f64 = (0..n)
        .map(|p| rule.integrate(|x| bspline_eval(n, x), p as f64, p as f64 + 1.0, 1))
        .sum();
    let partition = partition_residual(n, 1.0);
    Ok(AnalysisReport::from_residuals(
        [
            ("support", outside),
            ("nonpositive_interior_points", nonpositive as f64),
            ("unit_integral", (integral - 1.0).abs()),
            ("partition_of_unity", partition),
        ],
        tolerance,
    )
    .with_metric("support_length", nf))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CellStatus {
    FrameCertified,
    LowerBoundZeroCertified,
    Undecided,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseDiagramCell {
    pub a: f64,
    pub b: f64,
    pub status: CellStatus,
    pub bounds_estimate: FrameBounds,
    pub method: String,
    /// Extreme eigenvalues of a cyclic finite section, when one fits.
    pub finite_section: Option<FrameBounds>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanOptions {
    /// Grid points per period `[0, a)`.
    pub points_per_period: usize,
    /// Largest cyclic length used for the finite-section estimate.
    pub finite_section_max_len: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self {
            points_per_period: 1024,
            finite_section_max_len: 512,
        }
    }
}

/// Inf/sup of `sum_k B_N(x - k a)^2` over one period, with the slack that
/// turns grid values into bounds on the whole period.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeriodicDiagonal {
    pub inf: f64,
    pub sup: f64,
    pub slack: f64,
    /// True when the inf is exactly zero on a set of positive measure
    /// (N = 1) or at a point of continuity (N >= 2).
    pub vanishes: bool,
}

pub fn periodic_diagonal(n: usize, a: f64, points: usize) -> Result<PeriodicDiagonal> {
    if n == 0 || !(a > 0.0 && a.is_finite()) || points == 0 {
        return Err(FrameError::Domain(format!("need N >= 1, a > 0 and points > 0 (N = {n}, a = {a})")));
    }
    let nf = n as f64;
    let diag = |x: f64| -> f64 {
        let k_lo = ((x - nf) / a).floor() as i64;
        let k_hi = (x / a).ceil() as i64;
        (k_lo..=k_hi).map(|k| bspline_eval(n, x - k as f64 * a).powi(2)).sum()
    };
    let xs: Vec<f64> = if n == 1 {
        // piecewise constant and right-continuous: breakpoints give every value
        let mut v = vec![0.0, 1.0 % a];
        v.sort_by(f64::total_cmp);
        v.dedup();
        v
    } else {
        (0..points).map(|i| i as f64 * a / points as f64).collect()
    };
    let vals: Vec<f64> = xs.iter().map(|&x| diag(x)).collect();
    let inf = vals.iter().copied().fold(f64::INFINITY, f64::min);
    let sup = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let slack = if n == 1 {
        0.0
    } else {
        let terms = (nf / a).floor() + 1.0;
        2.0 * terms * (a / points as f64) / 2.0
    };
    Ok(PeriodicDiagonal {
        inf,
        sup,
        slack,
        vanishes: inf == 0.0,
    })
}

/// Exact frame bounds in the painless regime `b N <= 1`:
/// `A, B = (1/b) inf/sup sum_k B_N(x - k a)^2`, widened by the grid slack.
pub fn painless_bounds(n: usize, a: f64, b: f64, points: usize) -> Result<(FrameBounds, PeriodicDiagonal)> {
    if !(b > 0.0) {
        return Err(FrameError::Domain("b must be positive".into()));
    }
    if b * n as f64 > 1.0 + 1e-12 {
        return Err(FrameError::Precondition(format!(
            "painless regime needs b N <= 1 (b = {b}, N = {n})"
        )));
    }
    let d = periodic_diagonal(n, a, points)?;
    let lower = if d.vanishes { 0.0 } else { ((d.inf - d.slack) / b).max(0.0) };
    Ok((FrameBounds::new(lower, (d.sup + d.slack) / b), d))
}

/// Sufficient-condition bounds for `b N > 1`, through the wave-packet form
/// of the Gabor system (`a_j = 1`, translation step `b`, `c_m = m a`).
fn correlation_bounds(n: usize, a: f64, b: f64, points: usize) -> Result<(f64, f64)> {
    let gamma = UniformGrid::covering(0.0, a, points)?;
    let grid = WavePacketGrid::new(vec![1.0], b, CSet::Lattice { spacing: a, offset: 0.0 }).with_gamma(gamma);
    let s = wave_packet_sums(&FreqFunction::BSpline { order: n }, &grid)?;
    let nf = n as f64;
    let pairs = ((nf / a).floor() + 1.0) * (2.0 * (nf * b).floor() + 3.0);
    let slack = 2.0 * pairs * (a / points as f64) / 2.0 / b;
    Ok((s.lower - slack, s.upper + slack))
}

fn small_rational(x: f64) -> Option<Ratio<i64>> {
    let r = Ratio::<i64>::approximate_float(x)?;
    let close = (r.to_f64()? - x).abs() <= 1e-12 * x.abs().max(1.0);
    (close && *r.denom() <= 64).then_some(r)
}

/// Extreme eigenvalues of the frame operator of a cyclic finite section:
/// `B_N` sampled at density `D` (with `a D` and `D / b` integers) on `Z_L`.
pub fn finite_section_estimate(n: usize, a: f64, b: f64, max_len: usize) -> Option<FrameBounds> {
    let ra = small_rational(a)?;
    let rp = small_rational(1.0 / b)?;
    let base = ra.denom().lcm(rp.denom());
    let mut d = base;
    while d < 8 {
        d += base;
    }
    let a_steps = (ra * d).to_integer() as usize;
    let p_steps = (rp * d).to_integer() as usize;
    if a_steps == 0 || p_steps == 0 {
        return None;
    }
    let unit = a_steps.lcm(&p_steps);
    let need = n * d as usize + p_steps;
    let l = need.div_ceil(unit) * unit;
    if l > max_len {
        return None;
    }
    let scale = (1.0 / d as f64).sqrt();
    let mut window = vec![Complex64::new(0.0, 0.0); l];
    for t in 0..=n * d as usize {
        window[t % l] += Complex64::new(bspline_eval(n, t as f64 / d as f64) * scale, 0.0);
    }
    let spec = GaborSpec::new(l, a_steps, l / p_steps, window).ok()?;
    gabor_frame_bounds(&spec).ok()
}

/// Status of one `(a, b)` cell. "Not a frame" is only certified through the
/// vanishing of the periodic diagonal.
pub fn scan_cell(n: usize, a: f64, b: f64, opts: &ScanOptions) -> Result<PhaseDiagramCell> {
    if !(a > 0.0 && b > 0.0) {
        return Err(FrameError::Domain(format!("a and b must be positive (a = {a}, b = {b})")));
    }
    let pts = opts.points_per_period;
    let d = periodic_diagonal(n, a, pts)?;
    let cell = |status, bounds, method: &str| PhaseDiagramCell {
        a,
        b,
        status,
        bounds_estimate: bounds,
        method: method.to_string(),
        finite_section: None,
    };
    if d.vanishes {
        return Ok(cell(
            CellStatus::LowerBoundZeroCertified,
            FrameBounds::new(0.0, (d.sup + d.slack) / b),
            "periodic diagonal vanishes",
        ));
    }
    let mut out = if b * n as f64 <= 1.0 + 1e-12 {
        let (fb, _) = painless_bounds(n, a, b, pts)?;
        if fb.lower > 0.0 {
            cell(CellStatus::FrameCertified, fb, "painless")
        } else {
            cell(CellStatus::Undecided, fb, "painless (lower bound not separated from 0)")
        }
    } else if n >= 2 {
        let (lo, hi) = correlation_bounds(n, a, b, pts)?;
        if lo > 0.0 {
            cell(CellStatus::FrameCertified, FrameBounds::new(lo, hi), "wave-packet sufficient condition")
        } else {
            cell(
                CellStatus::Undecided,
                FrameBounds::new(0.0, hi),
                "wave-packet sufficient condition inconclusive",
            )
        }
    } else {
        cell(CellStatus::Undecided, FrameBounds::new(0.0, (d.sup + d.slack) / b), "no certificate")
    };
    out.finite_section = finite_section_estimate(n, a, b, opts.finite_section_max_len);
    if out.status == CellStatus::Undecided {
        if let Some(fs) = out.finite_section {
            out.bounds_estimate = fs;
            out.method.push_str("; bounds from finite section");
        }
    }
    Ok(out)
}

pub fn gabor_scan(n: usize, a_grid: &[f64], b_grid: &[f64], opts: &ScanOptions) -> Result<Vec<PhaseDiagramCell>> {
    let mut out = Vec::with_capacity(a_grid.len() * b_grid.len());
    for &a in a_grid {
        for &b in b_grid {
            out.push(scan_cell(n, a, b, opts)?);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct DualWindow {
    /// `(k, c_k)` with `h = sum_k c_k B_N(. + k)`.
    pub coefficients: Vec<(i64, f64)>,
    pub window: SampledWindow,
    pub generator: SampledWindow,
    pub report: AnalysisReport,
}

/// Solves for `h = sum_{k=-K}^{K} c_k B_N(. + k)` dual to `B_N` on the
/// lattice `(1, b)`: the duality conditions at `4K + 4` points per unit
/// become an overdetermined linear system, solved by least squares, and
/// the result is verified on a sampled grid.
pub fn dual_window_solve(n: usize, b: f64, k: usize, tolerance: f64) -> Result<DualWindow> {
    if n == 0 {
        return Err(FrameError::Domain("B-spline order must be at least 1".into()));
    }
    let limit = 1.0 / (2 * n - 1) as f64;
    if !(b > 0.0) || b > limit * (1.0 + 1e-12) {
        return Err(FrameError::Precondition(format!(
            "b = {b} outside (0, 1/(2N-1)] = (0, {limit}]"
        )));
    }
    if k + 1 < n {
        return Err(FrameError::Precondition(format!("need K >= N - 1 shifts (K = {k}, N = {n})")));
    }
    let nf = n as f64;
    let ki = k as i64;
    let per_unit = 4 * k + 4;
    let reach = (ki as f64 + nf) * b;
    let (n_lo, n_hi) = ((-reach).floor() as i64, reach.ceil() as i64);
    let unknowns = 2 * k + 1;
    let rows = (n_hi - n_lo + 1) as usize * per_unit;
    let mut m = DMatrix::<f64>::zeros(rows, unknowns);
    let mut rhs = DVector::<f64>::zeros(rows);
    let mut r = 0;
    for shift in n_lo..=n_hi {
        let q = shift as f64 / b;
        for s in 0..per_unit {
            let x = (s as f64 + 0.5) / per_unit as f64;
            let kp_lo = (x - q - nf).floor() as i64 - 1;
            let kp_hi = (x - q).ceil() as i64 + 1;
            for (col, c) in (-ki..=ki).enumerate() {
                m[(r, col)] = (kp_lo..=kp_hi)
                    .map(|kp| bspline_eval(n, x - q - kp as f64) * bspline_eval(n, x - kp as f64 + c as f64))
                    .sum();
            }
            rhs[r] = if shift == 0 { b } else { 0.0 };
            r += 1;
        }
    }
    let svd = m.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let cutoff = rows.max(unknowns) as f64 * f64::EPSILON * smax;
    let rank = svd.singular_values.iter().filter(|&&s| s > cutoff).count();
    let coef = svd
        .solve(&rhs, cutoff)
        .map_err(|e| FrameError::Infeasible(format!("least-squares solve failed: {e}")))?;
    let ls_residual = (&m * &coef - &rhs).amax();

    // sampling density with 1/(b h) and 1/h integral
    let rb = Ratio::<i64>::approximate_float(b).ok_or_else(|| FrameError::Domain(format!("b = {b} is not representable")))?;
    let density = 64 * *rb.numer() as usize;
    let h = 1.0 / density as f64;
    let coefficients: Vec<(i64, f64)> = (-ki..=ki).zip(coef.iter().copied()).collect();
    let count = (2 * k + n) * density + 1;
    let window = SampledWindow::from_real_fn(-(k as f64), h, count, (-(k as f64), k as f64 + nf), |x| {
        coefficients.iter().map(|&(c, v)| v * bspline_eval(n, x + c as f64)).sum()
    })?;
    let generator = SampledWindow::from_real_fn(0.0, h, n * density + 1, (0.0, nf), |x| bspline_eval(n, x))?;
    let report = ron_shen_duality_check(&generator, &window, 1.0, b, tolerance)?
        .with_metric("least_squares_residual", ls_residual)
        .with_metric("rank", rank as f64)
        .with_metric("unknowns", unknowns as f64);
    let report = if rank < unknowns {
        report.with_note(format!("rank-deficient system ({rank} of {unknowns}); minimum-norm solution"))
    } else {
        report
    };
    Ok(DualWindow {
        coefficients,
        window,
        generator,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_values() {
        assert_eq!(bspline_eval(1, 0.5), 1.0);
        assert_eq!(bspline_eval(1, 1.0), 0.0);
        assert_eq!(bspline_eval(2, 1.0), 1.0);
        assert!((bspline_eval(3, 1.5) - 0.75).abs() < 1e-15);
        for n in 1..=6 {
            assert_eq!(bspline_eval(n, -0.1), 0.0);
            assert_eq!(bspline_eval(n, n as f64 + 0.1), 0.0);
        }
    }

    #[test]
    fn recurrence_matches_truncated_powers() {
        for n in 1..=8 {
            for i in 0..=(n * 37) {
                let x = i as f64 / 37.0;
                assert!((bspline_eval(n, x) - truncated_power(n, x)).abs() < 1e-10, "N = {n}, x = {x}");
            }
        }
    }

    #[test]
    fn convolution_oracle_agrees() {
        for n in 1..=8 {
            let o = ConvolutionOracle::new(n);
            for i in 0..=(64 * n as i64) {
                let d = (o.at_index(i) - bspline_eval(n, i as f64 / 64.0)).abs();
                assert!(d <= 1e-10, "N = {n}, i = {i}: {d}");
            }
        }
    }

    #[test]
    fn fourier_examples() {
        for n in 1..=6 {
            assert_eq!(bspline_fourier(n, 0.0), Complex64::new(1.0, 0.0));
            assert_eq!(bspline_fourier(n, 3.0), Complex64::new(0.0, 0.0));
        }
        let v = bspline_fourier(1, 0.5);
        assert!((v - Complex64::new(0.0, -2.0 / PI)).norm() < 1e-15);
        for n in [1, 3, 6] {
            for g in [-7.3, -0.4, 0.01, 2.5, 8.0] {
                let d = (bspline_fourier(n, g) - bspline_fourier_quadrature(n, g)).norm();
                assert!(d < 1e-8, "N = {n}, g = {g}: {d}");
            }
        }
    }

    #[test]
    fn property_suite_passes_and_control_fails() {
        for n in 1..=6 {
            let rep = property_suite(n, 1e-10).unwrap();
            assert!(rep.passed(), "N = {n}: {rep:?}");
        }
        assert!(property_suite(1, 1e-15).unwrap().passed());
        assert!(partition_residual(3, 1.5) > 0.1);
    }

    #[test]
    fn painless_example() {
        let (fb, d) = painless_bounds(2, 0.5, 0.25, 1024).unwrap();
        // sum_k B2(x - k/2)^2 ranges over [1.25, 1.5], attained at x = 1/4 and x = 0
        assert!((d.inf - 1.25).abs() < 1e-12);
        assert!((d.sup - 1.5).abs() < 1e-12);
        assert!(fb.lower <= 5.0 && fb.lower > 4.9);
        assert!(fb.upper >= 6.0 && fb.upper < 6.1);
        let cell = scan_cell(2, 0.5, 0.25, &ScanOptions::default()).unwrap();
        assert_eq!(cell.status, CellStatus::FrameCertified);
    }

    #[test]
    fn scan_statuses() {
        let o = ScanOptions::default();
        for b in [0.1, 0.25, 0.5] {
            assert_eq!(scan_cell(2, 2.0, b, &o).unwrap().status, CellStatus::LowerBoundZeroCertified);
        }
        for a in [0.25, 0.5, 1.0, 1.5] {
            assert_ne!(scan_cell(2, a, 2.0, &o).unwrap().status, CellStatus::FrameCertified);
        }
    }

    #[test]
    fn painless_lower_bound_degenerates_near_a_equal_n() {
        let mut last = f64::INFINITY;
        for eps in [0.5, 0.25, 0.125, 0.0625] {
            let d = periodic_diagonal(2, 2.0 - eps, 1024).unwrap();
            assert!(d.inf < last);
            last = d.inf;
        }
        assert!(last < 0.01);
    }

    #[test]
    fn certified_cells_sandwich_finite_sections() {
        let o = ScanOptions::default();
        for (a, b) in [(0.5, 0.25), (1.0, 0.5), (0.75, 0.4), (1.0, 0.6), (0.5, 0.75)] {
            let c = scan_cell(2, a, b, &o).unwrap();
            if let (CellStatus::FrameCertified, Some(fs)) = (c.status, c.finite_section) {
                assert!(c.bounds_estimate.lower <= fs.lower + 1e-9, "{c:?}");
                assert!(c.bounds_estimate.upper >= fs.upper - 1e-9, "{c:?}");
            }
        }
    }

    #[test]
    fn dual_window_examples() {
        let dw = dual_window_solve(1, 1.0, 0, 1e-12).unwrap();
        assert!((dw.coefficients[0].1 - 1.0).abs() < 1e-12);
        assert!(dw.report.passed());

        for b in [1.0 / 3.0, 0.25] {
            let dw = dual_window_solve(2, b, 1, 1e-8).unwrap();
            assert!(dw.report.passed(), "b = {b}: {:?}", dw.report);
        }
        assert!(matches!(dual_window_solve(2, 0.6, 1, 1e-8), Err(FrameError::Precondition(_))));
        assert!(matches!(dual_window_solve(3, 0.2, 1, 1e-8), Err(FrameError::Precondition(_))));
    }
}
