//! Wavelet and wave-packet systems in the frequency domain.
//!
//! Generators are band-limited functions ([`FreqFunction`]), so every sum
//! over translations is finite at each frequency. The wave-packet system is
//! taken in the form whose Fourier transform is
//! `a_j^{-1/2} exp(-2 pi i k b gamma / a_j) g^(gamma / a_j - c_m)`.

mod packet;
mod wavelet;

pub use packet::{
    bessel_probe, discrete_frame_spectrum, lic_estimate, wave_packet_bessel_bound, wave_packet_duality_check,
    wave_packet_frame_bounds, wave_packet_sums, BesselBound, BesselProbe, LicEstimate, PacketSums,
};
pub use wavelet::wavelet_duality_check;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bspline::bspline_eval;
use crate::error::{FrameError, Result};

/// Uniform grid `start + i * step`, `i < count`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UniformGrid {
    pub start: f64,
    pub step: f64,
    pub count: usize,
}

impl UniformGrid {
    pub fn new(start: f64, step: f64, count: usize) -> Result<Self> {
        if !(step > 0.0 && step.is_finite() && start.is_finite()) || count == 0 {
            return Err(FrameError::Grid(format!("bad grid: start {start}, step {step}, count {count}")));
        }
        Ok(Self { start, step, count })
    }

    /// `count` points evenly covering the half-open interval `[lo, hi)`.
    pub fn covering(lo: f64, hi: f64, count: usize) -> Result<Self> {
        if !(hi > lo) {
            return Err(FrameError::Grid(format!("empty interval [{lo}, {hi})")));
        }
        Self::new(lo, (hi - lo) / count as f64, count)
    }

    /// Multiples of `step` covering `[lo, hi]`.
    pub fn anchored(lo: f64, hi: f64, step: f64) -> Result<Self> {
        let i0 = (lo / step).floor();
        let i1 = (hi / step).ceil();
        Self::new(i0 * step, step, (i1 - i0) as usize + 1)
    }

    pub fn point(&self, i: usize) -> f64 {
        self.start + i as f64 * self.step
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(|i| self.point(i))
    }

    pub fn end(&self) -> f64 {
        self.point(self.count - 1)
    }
}

fn one() -> f64 {
    1.0
}

/// A band-limited function of frequency.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FreqFunction {
    /// Samples on a uniform grid, linearly interpolated, zero outside `band`.
    Sampled {
        grid: UniformGrid,
        values: Vec<Complex64>,
        band: (f64, f64),
    },
    /// `scale` times the indicator of a union of half-open intervals.
    Indicator {
        intervals: Vec<(f64, f64)>,
        #[serde(default = "one")]
        scale: f64,
    },
    /// The B-spline `B_N` used as a compactly supported profile on `[0, N]`.
    BSpline { order: usize },
}

impl FreqFunction {
    pub fn indicator(lo: f64, hi: f64) -> Self {
        FreqFunction::Indicator {
            intervals: vec![(lo, hi)],
            scale: 1.0,
        }
    }

    pub fn zero() -> Self {
        FreqFunction::Indicator {
            intervals: vec![],
            scale: 1.0,
        }
    }

    /// `[-1, -1/2) ∪ [1/2, 1)`.
    pub fn shannon() -> Self {
        FreqFunction::Indicator {
            intervals: vec![(-1.0, -0.5), (0.5, 1.0)],
            scale: 1.0,
        }
    }

    pub fn scaled(&self, s: f64) -> Self {
        match self {
            FreqFunction::Indicator { intervals, scale } => FreqFunction::Indicator {
                intervals: intervals.clone(),
                scale: scale * s,
            },
            FreqFunction::Sampled { grid, values, band } => FreqFunction::Sampled {
                grid: *grid,
                values: values.iter().map(|v| v * s).collect(),
                band: *band,
            },
            FreqFunction::BSpline { order } => {
                let grid = UniformGrid::new(0.0, 1.0 / 256.0, 256 * order + 1).expect("valid grid");
                FreqFunction::Sampled {
                    grid,
                    values: grid.points().map(|x| Complex64::new(s * bspline_eval(*order, x), 0.0)).collect(),
                    band: (0.0, *order as f64),
                }
            }
        }
    }

    pub fn sampled(grid: UniformGrid, values: Vec<Complex64>, band: (f64, f64)) -> Result<Self> {
        let f = FreqFunction::Sampled { grid, values, band };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            FreqFunction::Sampled { grid, values, band } => {
                if values.len() != grid.count {
                    return Err(FrameError::Dimension {
                        expected: grid.count,
                        got: values.len(),
                        context: "sampled values vs grid",
                    });
                }
                if !(band.0.is_finite() && band.1.is_finite() && band.0 <= band.1) {
                    return Err(FrameError::Unsupported(format!(
                        "band [{}, {}] must be a finite interval",
                        band.0, band.1
                    )));
                }
                for (i, v) in values.iter().enumerate() {
                    let x = grid.point(i);
                    if !(v.re.is_finite() && v.im.is_finite()) {
                        return Err(FrameError::Domain("values must be finite".into()));
                    }
                    if v.norm() != 0.0 && (x < band.0 - 1e-12 || x > band.1 + 1e-12) {
                        return Err(FrameError::Domain(format!("nonzero value at {x} outside band")));
                    }
                }
                Ok(())
            }
            FreqFunction::Indicator { intervals, scale } => {
                if !scale.is_finite() || intervals.iter().any(|(a, b)| !(a.is_finite() && b.is_finite() && a <= b)) {
                    return Err(FrameError::Unsupported("indicator intervals must be finite".into()));
                }
                Ok(())
            }
            FreqFunction::BSpline { order } => {
                if *order == 0 {
                    return Err(FrameError::Domain("B-spline order must be at least 1".into()));
                }
                Ok(())
            }
        }
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        match self {
            FreqFunction::Sampled { grid, values, band } => {
                if x < band.0 || x > band.1 {
                    return Complex64::new(0.0, 0.0);
                }
                let r = (x - grid.start) / grid.step;
                if r < 0.0 || r > (grid.count - 1) as f64 {
                    return Complex64::new(0.0, 0.0);
                }
                let i = (r.floor() as usize).min(grid.count - 1);
                if i == grid.count - 1 {
                    return values[i];
                }
                let t = r - i as f64;
                values[i] * (1.0 - t) + values[i + 1] * t
            }
            FreqFunction::Indicator { intervals, scale } => {
                if intervals.iter().any(|&(a, b)| x >= a && x < b) {
                    Complex64::new(*scale, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }
            FreqFunction::BSpline { order } => Complex64::new(bspline_eval(*order, x), 0.0),
        }
    }

    /// Convex hull of the support, `None` for the zero function.
    pub fn band(&self) -> Option<(f64, f64)> {
        match self {
            FreqFunction::Sampled { band, values, .. } => {
                if values.iter().all(|v| v.norm() == 0.0) {
                    None
                } else {
                    Some(*band)
                }
            }
            FreqFunction::Indicator { intervals, scale } => {
                let live: Vec<_> = intervals.iter().filter(|(a, b)| b > a).collect();
                if live.is_empty() || *scale == 0.0 {
                    return None;
                }
                Some((
                    live.iter().map(|p| p.0).fold(f64::INFINITY, f64::min),
                    live.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max),
                ))
            }
            FreqFunction::BSpline { order } => Some((0.0, *order as f64)),
        }
    }

    /// Range of `|x|` over the support: `(inf, sup)`.
    pub fn abs_range(&self) -> Option<(f64, f64)> {
        let abs_of = |(a, b): (f64, f64)| -> (f64, f64) {
            let lo = if a <= 0.0 && b >= 0.0 { 0.0 } else { a.abs().min(b.abs()) };
            (lo, a.abs().max(b.abs()))
        };
        match self {
            FreqFunction::Indicator { intervals, scale } => {
                if *scale == 0.0 {
                    return None;
                }
                intervals
                    .iter()
                    .filter(|(a, b)| b > a)
                    .map(|&p| abs_of(p))
                    .reduce(|x, y| (x.0.min(y.0), x.1.max(y.1)))
            }
            FreqFunction::Sampled { grid, values, band } => {
                let idx: Vec<usize> = (0..values.len()).filter(|&i| values[i].norm() != 0.0).collect();
                let (&first, &last) = (idx.first()?, idx.last()?);
                // interpolation reaches one step beyond each nonzero sample
                let lo = (grid.point(first) - grid.step).max(band.0);
                let hi = (grid.point(last) + grid.step).min(band.1);
                Some(abs_of((lo, hi)))
            }
            FreqFunction::BSpline { .. } => self.band().map(abs_of),
        }
    }

    /// `sup |f|`, exact for indicators and samples.
    pub fn sup_abs(&self) -> f64 {
        match self {
            FreqFunction::Sampled { values, .. } => values.iter().map(|v| v.norm()).fold(0.0, f64::max),
            FreqFunction::Indicator { intervals, scale } => {
                if intervals.iter().any(|(a, b)| b > a) {
                    scale.abs()
                } else {
                    0.0
                }
            }
            FreqFunction::BSpline { order } => {
                if *order == 1 {
                    1.0
                } else {
                    bspline_eval(*order, *order as f64 / 2.0)
                }
            }
        }
    }
}

/// The modulation parameters `c_m`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CSet {
    List(Vec<f64>),
    /// `offset + m * spacing` for every integer `m`.
    Lattice {
        spacing: f64,
        #[serde(default)]
        offset: f64,
    },
}

impl CSet {
    /// The `c` in the set lying in `[lo, hi]`.
    pub fn in_range(&self, lo: f64, hi: f64) -> Vec<f64> {
        match self {
            CSet::List(v) => v.iter().copied().filter(|&c| c >= lo && c <= hi).collect(),
            CSet::Lattice { spacing, offset } => {
                let m0 = ((lo - offset) / spacing).ceil() as i64;
                let m1 = ((hi - offset) / spacing).floor() as i64;
                (m0..=m1).map(|m| offset + m as f64 * spacing).collect()
            }
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            CSet::List(v) if v.iter().all(|c| c.is_finite()) => Ok(()),
            CSet::Lattice { spacing, offset } if *spacing > 0.0 && spacing.is_finite() && offset.is_finite() => Ok(()),
            _ => Err(FrameError::Domain("modulation parameters must be finite (spacing > 0)".into())),
        }
    }
}

fn default_ceiling() -> f64 {
    1e6
}

/// Parameters `{a_j}`, `b`, `{c_m}` of a wave-packet system, with the
/// frequency grid on which sup/inf are evaluated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WavePacketGrid {
    pub a_values: Vec<f64>,
    pub b: f64,
    pub c_values: CSet,
    /// Evaluation grid; defaults to 4096 points over the region the system
    /// covers (requires a finite list of `c_m`).
    #[serde(default)]
    pub gamma: Option<UniformGrid>,
    /// Partial sums beyond this value are reported as divergence.
    #[serde(default = "default_ceiling")]
    pub divergence_ceiling: f64,
}

pub const DEFAULT_GAMMA_POINTS: usize = 4096;

impl WavePacketGrid {
    pub fn new(a_values: Vec<f64>, b: f64, c_values: CSet) -> Self {
        Self {
            a_values,
            b,
            c_values,
            gamma: None,
            divergence_ceiling: default_ceiling(),
        }
    }

    pub fn with_gamma(mut self, gamma: UniformGrid) -> Self {
        self.gamma = Some(gamma);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.a_values.is_empty() {
            return Err(FrameError::Domain("need at least one dilation".into()));
        }
        if self.a_values.iter().any(|&a| !(a > 0.0 && a.is_finite())) {
            return Err(FrameError::Domain("dilations must be positive".into()));
        }
        if !(self.b > 0.0 && self.b.is_finite()) {
            return Err(FrameError::Domain("b must be positive".into()));
        }
        self.c_values.validate()
    }

    /// Hull of the frequencies where some element is nonzero.
    pub fn covered_region(&self, band: (f64, f64)) -> Result<(f64, f64)> {
        let cs = match &self.c_values {
            CSet::List(v) if !v.is_empty() => v,
            CSet::List(_) => return Err(FrameError::Domain("empty modulation list".into())),
            CSet::Lattice { .. } => {
                return Err(FrameError::Unsupported(
                    "a lattice of modulations covers the whole line; give an explicit gamma grid".into(),
                ))
            }
        };
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for &a in &self.a_values {
            for &c in cs {
                lo = lo.min(a * (c + band.0));
                hi = hi.max(a * (c + band.1));
            }
        }
        Ok((lo, hi))
    }

    pub fn gamma_grid(&self, band: (f64, f64)) -> Result<UniformGrid> {
        match self.gamma {
            Some(g) => Ok(g),
            None => {
                let (lo, hi) = self.covered_region(band)?;
                UniformGrid::covering(lo, hi, DEFAULT_GAMMA_POINTS)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indicator_is_half_open() {
        let f = FreqFunction::indicator(0.0, 1.0);
        assert_eq!(f.eval(0.0).re, 1.0);
        assert_eq!(f.eval(1.0).re, 0.0);
        assert_eq!(f.band(), Some((0.0, 1.0)));
    }

    #[test]
    fn shannon_abs_range_avoids_zero() {
        assert_eq!(FreqFunction::shannon().abs_range(), Some((0.5, 1.0)));
        assert_eq!(FreqFunction::zero().band(), None);
    }

    #[test]
    fn sampled_interpolates_and_validates() {
        let grid = UniformGrid::new(0.0, 0.5, 3).unwrap();
        let f = FreqFunction::sampled(grid, vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)], (0.0, 1.0)).unwrap();
        assert!((f.eval(0.25).re - 0.5).abs() < 1e-15);
        assert!(FreqFunction::sampled(grid, vec![Complex64::new(1.0, 0.0); 3], (0.0, 0.5)).is_err());
    }

    #[test]
    fn json_forms_are_untagged() {
        let f: FreqFunction = serde_json::from_str(r#"{"intervals":[[0,1]]}"#).unwrap();
        assert_eq!(f, FreqFunction::indicator(0.0, 1.0));
        let f: FreqFunction = serde_json::from_str(r#"{"order":3}"#).unwrap();
        assert_eq!(f, FreqFunction::BSpline { order: 3 });
        let f: FreqFunction =
            serde_json::from_str(r#"{"grid":{"start":0,"step":1,"count":2},"values":[[1,0],[0,0]],"band":[0,1]}"#).unwrap();
        assert!(matches!(f, FreqFunction::Sampled { .. }));
        let c: CSet = serde_json::from_str(r#"{"spacing":0.5}"#).unwrap();
        assert_eq!(c.in_range(-0.6, 0.6), vec![-0.5, 0.0, 0.5]);
    }
}
