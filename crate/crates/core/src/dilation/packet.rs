//! Wave-packet bounds, duality conditions and the local integrability sum.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{CSet, FreqFunction, UniformGrid, WavePacketGrid};
use crate::error::{FrameError, Result};
use crate::linalg::{self, CMatrix};
use crate::quad::GaussLegendre;
use crate::report::{AnalysisReport, Verdict};

/// Sup/inf of the bound integrands over the evaluation grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PacketSums {
    /// `sup_gamma (diag + off) / b`.
    pub upper: f64,
    /// `inf_gamma (diag - off) / b`, possibly negative.
    pub lower: f64,
    pub arg_upper: f64,
    pub arg_lower: f64,
}

/// `(sum_{j,m} |g(x)|^2, sum_{j,m} sum_{k != 0} |g(x) g(x - k/b)|)` at
/// `gamma`, where `x = gamma / a_j - c_m`.
fn sums_at(g: &FreqFunction, band: (f64, f64), a_values: &[f64], b: f64, c: &CSet, gamma: f64) -> (f64, f64) {
    let mut diag = 0.0;
    let mut off = 0.0;
    for &a in a_values {
        let y = gamma / a;
        for cm in c.in_range(y - band.1, y - band.0) {
            let x = y - cm;
            let v = g.eval(x).norm();
            if v == 0.0 {
                continue;
            }
            diag += v * v;
            let k_lo = ((x - band.1) * b).ceil() as i64;
            let k_hi = ((x - band.0) * b).floor() as i64;
            for k in k_lo..=k_hi {
                if k != 0 {
                    off += v * g.eval(x - k as f64 / b).norm();
                }
            }
        }
    }
    (diag, off)
}

/// `max(|dB|, |dA|)` between the sums on the working grid and on every other
/// point of it: a convergence indicator for the grid estimate.
fn refinement_change(g: &FreqFunction, grid: &WavePacketGrid, fine: &PacketSums) -> Result<f64> {
    let Some(band) = g.band() else {
        return Ok(0.0);
    };
    let gg = grid.gamma_grid(band)?;
    if gg.count < 4 {
        return Ok(0.0);
    }
    let coarse = UniformGrid::new(gg.start, 2.0 * gg.step, gg.count.div_ceil(2))?;
    let c = wave_packet_sums(g, &grid.clone().with_gamma(coarse))?;
    Ok((fine.upper - c.upper).abs().max((fine.lower - c.lower).abs()))
}

pub fn wave_packet_sums(g: &FreqFunction, grid: &WavePacketGrid) -> Result<PacketSums> {
    g.validate()?;
    grid.validate()?;
    let Some(band) = g.band() else {
        return Ok(PacketSums {
            upper: 0.0,
            lower: 0.0,
            arg_upper: 0.0,
            arg_lower: 0.0,
        });
    };
    let gg = grid.gamma_grid(band)?;
    let mut out = PacketSums {
        upper: f64::NEG_INFINITY,
        lower: f64::INFINITY,
        arg_upper: gg.start,
        arg_lower: gg.start,
    };
    for gamma in gg.points() {
        let (d, o) = sums_at(g, band, &grid.a_values, grid.b, &grid.c_values, gamma);
        let (up, lo) = ((d + o) / grid.b, (d - o) / grid.b);
        if up > out.upper {
            out.upper = up;
            out.arg_upper = gamma;
        }
        if lo < out.lower {
            out.lower = lo;
            out.arg_lower = gamma;
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum BesselBound {
    Bounded { bound: f64 },
    /// Partial sums passed the divergence ceiling.
    Unbounded { partial: f64 },
}

impl BesselBound {
    pub fn value(&self) -> Option<f64> {
        match self {
            BesselBound::Bounded { bound } => Some(*bound),
            BesselBound::Unbounded { .. } => None,
        }
    }
}

/// Upper Bessel bound `B = (1/b) sup sum |g g(. - k/b)|` on the grid.
pub fn wave_packet_bessel_bound(g: &FreqFunction, grid: &WavePacketGrid) -> Result<(BesselBound, AnalysisReport)> {
    let s = wave_packet_sums(g, grid)?;
    let notes = "index sets are the given finite lists; the k-sum is exact for band-limited generators";
    if s.upper > grid.divergence_ceiling {
        let rep = AnalysisReport::new(Verdict::Fail, grid.divergence_ceiling)
            .with_metric("partial_bound", s.upper)
            .with_metric("tail_bound", 0.0)
            .with_note("unbounded (Bessel violated): partial sums exceed the divergence ceiling")
            .with_note(notes);
        return Ok((BesselBound::Unbounded { partial: s.upper }, rep));
    }
    let rep = AnalysisReport::new(Verdict::Pass, grid.divergence_ceiling)
        .with_metric("bessel_bound", s.upper)
        .with_metric("refinement_change", refinement_change(g, grid, &s)?)
        .with_metric("tail_bound", 0.0)
        .with_metric("gamma_at_sup", s.arg_upper)
        .with_note(notes);
    Ok((BesselBound::Bounded { bound: s.upper }, rep))
}

/// Frame bounds `(max(A, 0), B)` from the sufficient condition.
pub fn wave_packet_frame_bounds(
    g: &FreqFunction,
    grid: &WavePacketGrid,
) -> Result<(crate::frame::FrameBounds, AnalysisReport)> {
    let s = wave_packet_sums(g, grid)?;
    let bounds = crate::frame::FrameBounds::new(s.lower.max(0.0), s.upper);
    let verdict = if s.upper > grid.divergence_ceiling {
        Verdict::Fail
    } else if s.lower > 0.0 {
        Verdict::Pass
    } else {
        Verdict::Undecided
    };
    let mut rep = AnalysisReport::new(verdict, 0.0)
        .with_metric("lower_raw", s.lower)
        .with_metric("lower", bounds.lower)
        .with_metric("upper", bounds.upper)
        .with_metric("refinement_change", refinement_change(g, grid, &s)?)
        .with_metric("gamma_at_inf", s.arg_lower)
        .with_metric("gamma_at_sup", s.arg_upper);
    rep = match verdict {
        Verdict::Pass => rep.with_note("frame certified by the sufficient condition"),
        Verdict::Undecided => rep.with_note("sufficient condition inconclusive (A <= 0); this is not a proof that the system fails to be a frame"),
        Verdict::Fail => rep.with_note("unbounded (Bessel violated)"),
    };
    Ok((bounds, rep))
}

/// Extreme eigenvalues of the frame operator of the explicitly synthesized
/// system on the frequency grid `step * Z` restricted to the covered region.
///
/// Each `a_j / (b step)` must be an integer `R_j`; translations `k` run over
/// `0..R_j`, which makes the discrete exponential sums exact. Returns
/// `(lambda_min, lambda_max, grid)`.
pub fn discrete_frame_spectrum(g: &FreqFunction, grid: &WavePacketGrid, step: f64) -> Result<(f64, f64, UniformGrid)> {
    g.validate()?;
    grid.validate()?;
    let band = g.band().ok_or_else(|| FrameError::Domain("generator is zero".into()))?;
    let (lo, hi) = grid.covered_region(band)?;
    let window = UniformGrid::anchored(lo, hi, step)?;
    let c_list = grid.c_values.in_range(f64::NEG_INFINITY, f64::INFINITY);
    let mut cols: Vec<Vec<Complex64>> = Vec::new();
    for &a in &grid.a_values {
        let r = a / (grid.b * step);
        let rj = r.round();
        if (r - rj).abs() > 1e-9 * rj.max(1.0) || rj < 1.0 {
            return Err(FrameError::Grid(format!("a_j / (b h) = {r} is not a positive integer")));
        }
        let rj = rj as usize;
        for &c in &c_list {
            let base: Vec<Complex64> = window
                .points()
                .map(|gm| g.eval(gm / a - c) * (step / a).sqrt())
                .collect();
            if base.iter().all(|z| z.norm() == 0.0) {
                continue;
            }
            for k in 0..rj {
                cols.push(
                    (0..window.count)
                        .map(|i| {
                            let idx = (window.start / step).round() as i64 + i as i64;
                            // b gamma_i / a_j = idx / R_j
                            let ph = -2.0 * PI * ((k as i64 * idx).rem_euclid(rj as i64)) as f64 / rj as f64;
                            base[i] * Complex64::from_polar(1.0, ph)
                        })
                        .collect(),
                );
            }
        }
    }
    let t = CMatrix::from_fn(window.count, cols.len(), |i, j| cols[j][i]);
    let s = &t * t.adjoint();
    let ev = linalg::hermitian_eigenvalues(&s);
    Ok((ev[0], *ev.last().expect("nonempty window"), window))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BesselProbe {
    /// `(levels, sup of partial sums)` at each checkpoint.
    pub trace: Vec<(usize, f64)>,
    pub exceeded: bool,
    pub ceiling: f64,
    /// Grid points whose dilated argument overflowed and stopped contributing.
    pub saturated_points: usize,
}

/// Partial Bessel sums for `a_j = ratio^j`, `j = 0, 1, 2, ...`, recorded at
/// `1, 2, 4, ...` levels until the sup over `gamma` exceeds `ceiling` or
/// `max_levels` is reached.
pub fn bessel_probe(
    g: &FreqFunction,
    ratio: f64,
    b: f64,
    c: &CSet,
    gamma: &UniformGrid,
    ceiling: f64,
    max_levels: usize,
) -> Result<BesselProbe> {
    g.validate()?;
    c.validate()?;
    if !(ratio > 0.0 && b > 0.0) {
        return Err(FrameError::Domain("ratio and b must be positive".into()));
    }
    let band = g.band().ok_or_else(|| FrameError::Domain("generator is zero".into()))?;
    let pts: Vec<f64> = gamma.points().collect();
    let mut partial = vec![0.0; pts.len()];
    let mut alive = vec![true; pts.len()];
    let mut trace = Vec::new();
    let mut next_checkpoint = 1;
    let inv = 1.0 / ratio;
    for level in 0..max_levels {
        let scale = inv.powi(level as i32);
        for (i, &gm) in pts.iter().enumerate() {
            if !alive[i] {
                continue;
            }
            let y = if gm == 0.0 { 0.0 } else { gm * scale };
            if !y.is_finite() {
                alive[i] = false;
                continue;
            }
            // one dilation at a time: a = 1 with the argument pre-scaled
            let (d, o) = sums_at(g, band, &[1.0], b, c, y);
            partial[i] += (d + o) / b;
        }
        let done = level + 1;
        if done == next_checkpoint || done == max_levels {
            let sup = partial.iter().copied().fold(0.0, f64::max);
            trace.push((done, sup));
            next_checkpoint *= 2;
            if sup > ceiling {
                break;
            }
        }
    }
    let exceeded = trace.last().is_some_and(|&(_, s)| s > ceiling);
    Ok(BesselProbe {
        trace,
        exceeded,
        ceiling,
        saturated_points: alive.iter().filter(|a| !**a).count(),
    })
}

type Q = Ratio<i128>;

fn to_rational(x: f64, what: &str) -> Result<Q> {
    let r = Q::approximate_float(x).ok_or_else(|| FrameError::Domain(format!("{what} = {x} is not representable")))?;
    if *r.denom() > 1_000_000 || (r.to_f64().unwrap_or(f64::NAN) - x).abs() > 1e-12 * x.abs().max(1.0) {
        return Err(FrameError::Domain(format!("{what} = {x} must be a rational with a small denominator")));
    }
    Ok(r)
}

fn rational_pow(a: &Q, j: i32) -> Result<Q> {
    let base = if j < 0 { a.recip() } else { *a };
    let mut out = Q::one();
    for _ in 0..j.unsigned_abs() {
        out = Q::new(
            out.numer().checked_mul(*base.numer()).ok_or_else(overflow)?,
            out.denom().checked_mul(*base.denom()).ok_or_else(overflow)?,
        );
    }
    Ok(out)
}

fn overflow() -> FrameError {
    FrameError::Truncation("dilation exponent too large for exact rational grouping".into())
}

/// Dilation indices `j` with `a^{-j} |gamma|` in `[r_lo, r_hi]`.
fn j_window(a: f64, gamma: f64, r_lo: f64, r_hi: f64) -> (i32, i32) {
    let la = a.ln();
    let g = gamma.abs();
    (((g / r_hi).ln() / la).floor() as i32, ((g / r_lo).ln() / la).ceil() as i32)
}

/// Conditions (c1), (c2) and the full grouped condition for the systems
/// `{D_{a^j} T_{bk} E_{c_m} psi}` and the same with `psi_t`.
pub fn wave_packet_duality_check(
    psi: &FreqFunction,
    psi_t: &FreqFunction,
    a: f64,
    b: f64,
    c_values: &[f64],
    gamma: Option<UniformGrid>,
    tolerance: f64,
) -> Result<AnalysisReport> {
    psi.validate()?;
    psi_t.validate()?;
    if !(a > 1.0 && b > 0.0) {
        return Err(FrameError::Domain(format!("need a > 1 and b > 0 (a = {a}, b = {b})")));
    }
    if c_values.is_empty() {
        return Err(FrameError::Domain("empty modulation list".into()));
    }
    let gamma = match gamma {
        Some(g) => g,
        None => UniformGrid::covering(-4.0, 4.0, super::DEFAULT_GAMMA_POINTS)?,
    };
    let (Some(band_p), Some(band_t)) = (psi.band(), psi_t.band()) else {
        return Ok(AnalysisReport::from_residuals(
            [("c1", b.abs()), ("c2", 0.0), ("g1", b.abs())],
            tolerance,
        )
        .with_note("a generator is zero"));
    };
    // |x| range over c_m + band(psi) decides which dilations contribute
    let mut r_lo = f64::INFINITY;
    let mut r_hi: f64 = 0.0;
    for &c in c_values {
        let (lo, hi) = (c + band_p.0, c + band_p.1);
        if c == 0.0 {
            // the support itself may have a gap around 0
            let (alo, ahi) = psi.abs_range().unwrap_or((0.0, 0.0));
            r_lo = r_lo.min(alo);
            r_hi = r_hi.max(ahi);
            continue;
        }
        r_lo = r_lo.min(if lo <= 0.0 && hi >= 0.0 { 0.0 } else { lo.abs().min(hi.abs()) });
        r_hi = r_hi.max(lo.abs().max(hi.abs()));
    }
    if r_lo <= 0.0 {
        return Err(FrameError::Truncation(
            "some c_m + supp(psi^) contains 0, so infinitely many dilations contribute".into(),
        ));
    }
    let a_q = to_rational(a, "a")?;
    let b_q = to_rational(b, "b")?;
    let b_inv = b_q.recip();

    let mut res_c1: f64 = 0.0;
    let mut res_g1: f64 = 0.0;
    let mut groups: BTreeMap<Q, Complex64> = BTreeMap::new();
    let mut skipped_zero = false;
    for gm in gamma.points() {
        if gm == 0.0 {
            skipped_zero = true;
            continue;
        }
        groups.clear();
        let (j0, j1) = j_window(a, gm, r_lo, r_hi);
        let mut c1 = Complex64::new(0.0, 0.0);
        for j in j0..=j1 {
            let aj = a.powi(j);
            let aj_q = rational_pow(&a_q, j)?;
            let y = gm / aj;
            for &c in c_values {
                let p = psi.eval(y - c);
                if p.norm() == 0.0 {
                    continue;
                }
                c1 += p * psi_t.eval(y - c).conj();
                // second argument y + n/b - c must lie in band(psi_t)
                let n_lo = ((band_t.0 + c - y) * b).ceil() as i64;
                let n_hi = ((band_t.1 + c - y) * b).floor() as i64;
                for n in n_lo..=n_hi {
                    let v = p * psi_t.eval(y + n as f64 / b - c).conj();
                    let alpha = aj_q * b_inv * Q::from_integer(n as i128);
                    *groups.entry(alpha).or_default() += v;
                }
            }
        }
        res_c1 = res_c1.max((c1 - b).norm());
        for (alpha, v) in &groups {
            let target = if alpha.is_zero() { b } else { 0.0 };
            res_g1 = res_g1.max((v - target).norm());
        }
        if !groups.contains_key(&Q::zero()) {
            res_g1 = res_g1.max(b);
        }
    }

    // (c2): psi^(g) conj(psit^(g + q)) = 0 for q in (1/b)(Z \ {0})
    let span = band_p.1.max(band_t.1) - band_p.0.min(band_t.0);
    let k_max = (span * b).ceil() as i64;
    let g2 = UniformGrid::covering(band_p.0, band_p.1.max(band_p.0 + 1e-12), super::DEFAULT_GAMMA_POINTS)?;
    let mut res_c2: f64 = 0.0;
    for k in -k_max..=k_max {
        if k == 0 {
            continue;
        }
        let q = k as f64 / b;
        for x in g2.points() {
            res_c2 = res_c2.max((psi.eval(x) * psi_t.eval(x + q).conj()).norm());
        }
    }
    let mut rep = AnalysisReport::from_residuals([("c1", res_c1), ("c2", res_c2), ("g1", res_g1)], tolerance)
        .with_metric("gamma_points", gamma.count as f64);
    if skipped_zero {
        rep = rep.with_note("gamma = 0 skipped (measure zero)");
    }
    Ok(rep)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LicEstimate {
    pub value: f64,
    /// Partial sums after each dilation, in the order given.
    pub trace: Vec<f64>,
}

fn breakpoints(f: &FreqFunction) -> Vec<f64> {
    match f {
        FreqFunction::Indicator { intervals, .. } => intervals.iter().flat_map(|&(a, b)| [a, b]).collect(),
        FreqFunction::Sampled { grid, band, .. } => {
            let mut v: Vec<f64> = grid.points().filter(|x| *x >= band.0 && *x <= band.1).collect();
            v.extend([band.0, band.1]);
            v
        }
        FreqFunction::BSpline { order } => (0..=*order).map(|k| k as f64).collect(),
    }
}

/// Truncated `L(f) = sum_j sum_m sum_n int_{supp f^} |f^(g + a_j n / b)|^2
/// |psi^(g / a_j - c_m)|^2 dg` over the listed dilations and modulations.
/// Integrals are split at every breakpoint of both factors.
pub fn lic_estimate(psi: &FreqFunction, grid: &WavePacketGrid, f_hat: &FreqFunction) -> Result<LicEstimate> {
    psi.validate()?;
    f_hat.validate()?;
    grid.validate()?;
    let cs = match &grid.c_values {
        CSet::List(v) => v.clone(),
        CSet::Lattice { .. } => return Err(FrameError::Unsupported("lic needs a finite list of c_m".into())),
    };
    let (Some(fb), Some(_)) = (f_hat.band(), psi.band()) else {
        return Ok(LicEstimate {
            value: 0.0,
            trace: vec![0.0; grid.a_values.len()],
        });
    };
    let rule = GaussLegendre::new(8);
    let fbp = breakpoints(f_hat);
    let pbp = breakpoints(psi);
    let width = fb.1 - fb.0;
    let mut total = 0.0;
    let mut trace = Vec::with_capacity(grid.a_values.len());
    for &a in &grid.a_values {
        let n_max = (width * grid.b / a).floor() as i64;
        for &c in &cs {
            for n in -n_max..=n_max {
                let s = a * n as f64 / grid.b;
                let lo = fb.0.max(fb.0 - s);
                let hi = fb.1.min(fb.1 - s);
                if hi <= lo {
                    continue;
                }
                let mut cuts: Vec<f64> = fbp
                    .iter()
                    .map(|x| x - s)
                    .chain(pbp.iter().map(|x| a * (x + c)))
                    .filter(|x| *x > lo && *x < hi)
                    .collect();
                cuts.push(lo);
                cuts.push(hi);
                cuts.sort_by(f64::total_cmp);
                cuts.dedup();
                for w in cuts.windows(2) {
                    total += rule.integrate(
                        |g| f_hat.eval(g + s).norm_sqr() * psi.eval(g / a - c).norm_sqr(),
                        w[0],
                        w[1],
                        1,
                    );
                }
            }
        }
        trace.push(total);
    }
    Ok(LicEstimate { value: total, trace })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single_dilation_indicator() -> (FreqFunction, WavePacketGrid) {
        let g = FreqFunction::indicator(0.0, 1.0);
        let grid = WavePacketGrid::new(vec![1.0], 1.0, CSet::List((-20..20).map(f64::from).collect()));
        (g, grid)
    }

    #[test]
    fn indicator_tiling_is_tight() {
        let (g, grid) = single_dilation_indicator();
        let (b, _) = wave_packet_bessel_bound(&g, &grid).unwrap();
        assert_eq!(b.value(), Some(1.0));
        let (fb, rep) = wave_packet_frame_bounds(&g, &grid).unwrap();
        assert_eq!((fb.lower, fb.upper), (1.0, 1.0));
        assert_eq!(rep.verdict, Verdict::Pass);
    }

    #[test]
    fn zero_generator_has_zero_bound() {
        let (_, grid) = single_dilation_indicator();
        let (b, _) = wave_packet_bessel_bound(&FreqFunction::zero(), &grid).unwrap();
        assert_eq!(b.value(), Some(0.0));
    }

    #[test]
    fn spectral_gap_is_inconclusive() {
        let g = FreqFunction::indicator(0.0, 0.5);
        let grid = WavePacketGrid::new(vec![1.0], 1.0, CSet::List(vec![0.0, 1.0, 2.0]));
        let (fb, rep) = wave_packet_frame_bounds(&g, &grid).unwrap();
        assert_eq!(fb.lower, 0.0);
        assert_eq!(rep.verdict, Verdict::Undecided);
        assert!(rep.notes.contains("inconclusive"));
    }

    #[test]
    fn bounds_sandwich_discrete_spectrum() {
        let g = FreqFunction::Indicator {
            intervals: vec![(-0.25, 0.5)],
            scale: 1.0,
        };
        let grid = WavePacketGrid::new(vec![0.5, 1.0, 2.0], 0.5, CSet::List(vec![-1.0, 0.0, 0.75]));
        let (lmin, lmax, window) = discrete_frame_spectrum(&g, &grid, 1.0 / 16.0).unwrap();
        let fine = UniformGrid::anchored(window.start, window.end(), 1.0 / 64.0).unwrap();
        let s = wave_packet_sums(&g, &grid.clone().with_gamma(fine)).unwrap();
        assert!(s.upper >= lmax - 1e-9, "{} < {lmax}", s.upper);
        assert!(s.lower <= lmin + 1e-9);
    }

    #[test]
    fn probe_exceeds_ceiling_for_shrinking_dilations() {
        let g = FreqFunction::indicator(0.0, 1.0);
        let gamma = UniformGrid::new(-4.0 / 1024.0, 1.0 / 1024.0, 9).unwrap();
        let p = bessel_probe(&g, 0.5, 1.0, &CSet::Lattice { spacing: 1.0, offset: 0.0 }, &gamma, 1e3, 1 << 12).unwrap();
        assert!(p.exceeded);
        assert!(p.trace.windows(2).all(|w| w[1].1 > w[0].1));
        assert_eq!(p.trace[0], (1, 1.0));
    }

    #[test]
    fn shannon_packet_duality_matches_wavelet() {
        let s = FreqFunction::shannon();
        let rep = wave_packet_duality_check(&s, &s, 2.0, 1.0, &[0.0], None, 1e-12).unwrap();
        assert!(rep.passed(), "{rep:?}");
        let rep = wave_packet_duality_check(&s, &FreqFunction::zero(), 2.0, 1.0, &[0.0], None, 1e-12).unwrap();
        assert_eq!(rep.residual("c1"), Some(1.0));
    }

    #[test]
    fn narrow_bands_satisfy_c2_vacuously() {
        let f = FreqFunction::indicator(0.5, 1.0);
        let rep = wave_packet_duality_check(&f, &f, 2.0, 1.0, &[0.0, 3.0], None, 1e-12).unwrap();
        assert_eq!(rep.residual("c2"), Some(0.0));
    }

    #[test]
    fn lic_vanishes_for_zero_and_disjoint_bands() {
        let (_, grid) = single_dilation_indicator();
        let f = FreqFunction::indicator(0.0, 1.0);
        assert_eq!(lic_estimate(&FreqFunction::zero(), &grid, &f).unwrap().value, 0.0);
        let far = WavePacketGrid::new(vec![1.0], 1.0, CSet::List(vec![10.0]));
        assert_eq!(lic_estimate(&f, &far, &FreqFunction::indicator(0.0, 0.5)).unwrap().value, 0.0);
    }

    #[test]
    fn lic_matches_direct_double_sum() {
        // psi = chi_[0,1), c_m in {0, 1}, a = 1, b = 2, f = chi_[0, 1.5)
        let psi = FreqFunction::indicator(0.0, 1.0);
        let grid = WavePacketGrid::new(vec![1.0], 2.0, CSet::List(vec![0.0, 1.0]));
        let f = FreqFunction::indicator(0.0, 1.5);
        let est = lic_estimate(&psi, &grid, &f).unwrap();
        // sum over n of |[0,1.5) ∩ ([0,1.5) - n/2) ∩ [c, c+1)| for c = 0, 1
        let mut direct = 0.0;
        for c in [0.0, 1.0] {
            for n in -3i32..=3 {
                let s = n as f64 / 2.0;
                let lo = f64::max(0.0, -s).max(c);
                let hi = f64::min(1.5, 1.5 - s).min(c + 1.0);
                direct += (hi - lo).max(0.0);
            }
        }
        assert!((est.value - direct).abs() < 1e-12, "{} vs {direct}", est.value);
    }
}
