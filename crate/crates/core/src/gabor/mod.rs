//! Gabor systems: an exact finite cyclic model on `Z_L`, plus checks on
//! sampled windows over the real line.
//!
//! In the cyclic model the time step `a` and frequency step `b` are divisors
//! of `L`, translation is cyclic and modulation by `m b` multiplies sample `t`
//! by `exp(2 pi i m b t / L)`. The adjoint lattice has steps `(L/b, L/a)` and
//! its window is scaled by `sqrt(L / (a b))`.

mod hrt;
mod sampled;

pub use hrt::{hrt_independence, hrt_independence_fn, HRT_CAVEAT};
pub use sampled::{gabor_extension, ron_shen_duality_check, ron_shen_residuals, SampledExtension, SampledWindow, TFPoint};

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, FrameError, Result};
use crate::frame::{self, FrameBounds, Mode, VectorSystem, NOT_A_FRAME_RATIO};
use crate::linalg::{self, CMatrix, CVector};
use crate::report::{AnalysisReport, Verdict};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaborSpec {
    #[serde(rename = "L")]
    pub l: usize,
    pub a: usize,
    pub b: usize,
    pub window: Vec<Complex64>,
}

impl GaborSpec {
    pub fn new(l: usize, a: usize, b: usize, window: Vec<Complex64>) -> Result<Self> {
        let spec = Self { l, a, b, window };
        spec.validate()?;
        Ok(spec)
    }

    pub fn real(l: usize, a: usize, b: usize, window: &[f64]) -> Result<Self> {
        Self::new(l, a, b, window.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn validate(&self) -> Result<()> {
        if self.l == 0 || self.a == 0 || self.b == 0 {
            return Err(FrameError::Domain("L, a and b must be positive".into()));
        }
        if self.l % self.a != 0 || self.l % self.b != 0 {
            return Err(FrameError::Domain(format!(
                "a = {} and b = {} must divide L = {}",
                self.a, self.b, self.l
            )));
        }
        check_dim(self.l, self.window.len(), "window length vs L")
    }

    pub fn time_shifts(&self) -> usize {
        self.l / self.a
    }

    pub fn freq_shifts(&self) -> usize {
        self.l / self.b
    }

    pub fn size(&self) -> usize {
        self.time_shifts() * self.freq_shifts()
    }

    /// Same lattice, different window.
    pub fn with_window(&self, window: Vec<Complex64>) -> Result<Self> {
        Self::new(self.l, self.a, self.b, window)
    }

    /// Lattice `(L/b, L/a)` with the window scaled by `sqrt(L/(ab))`.
    pub fn adjoint(&self) -> Self {
        let s = (self.l as f64 / (self.a * self.b) as f64).sqrt();
        Self {
            l: self.l,
            a: self.l / self.b,
            b: self.l / self.a,
            window: self.window.iter().map(|z| z * s).collect(),
        }
    }

    pub fn window_vector(&self) -> CVector {
        CVector::from_column_slice(&self.window)
    }
}

fn phase(l: usize, k: usize, t: usize) -> Complex64 {
    // reduce first so the angle stays small and exact multiples stay exact
    let r = (k * t) % l;
    Complex64::from_polar(1.0, 2.0 * PI * r as f64 / l as f64)
}

/// `M_{mb} T_{na} x`.
pub fn tf_shift(x: &[Complex64], l: usize, shift: usize, freq: usize) -> CVector {
    CVector::from_fn(l, |t, _| phase(l, freq, t) * x[(t + l - shift % l) % l])
}

/// Matrix of `M_{freq} T_{shift}` on `C^L`.
pub fn tf_shift_matrix(l: usize, shift: usize, freq: usize) -> CMatrix {
    let mut m = CMatrix::zeros(l, l);
    for t in 0..l {
        m[(t, (t + l - shift % l) % l)] = phase(l, freq, t);
    }
    m
}

/// Vectors `M_{mb} T_{na} g`, ordered lexicographically in `(n, m)`.
pub fn finite_gabor_system(spec: &GaborSpec) -> Result<VectorSystem> {
    spec.validate()?;
    let mut vectors = Vec::with_capacity(spec.size());
    for n in 0..spec.time_shifts() {
        for m in 0..spec.freq_shifts() {
            vectors.push(tf_shift(&spec.window, spec.l, n * spec.a, m * spec.b));
        }
    }
    VectorSystem::new(
        spec.l,
        vectors,
        format!("Gabor(L={}, a={}, b={})", spec.l, spec.a, spec.b),
    )
}

/// Frame operator of a Gabor system without building the vectors:
/// `S[t,s] = (L/b) sum_n g[t-na] conj(g[s-na])` when `t = s mod L/b`.
pub fn gabor_frame_operator(spec: &GaborSpec) -> Result<CMatrix> {
    mixed_frame_operator(spec, &spec.window)
}

/// `U T^*` for the Gabor systems of `h` (synthesis `U`) and `g` (`T`) on the
/// same lattice.
fn mixed_frame_operator(spec: &GaborSpec, other: &[Complex64]) -> Result<CMatrix> {
    spec.validate()?;
    check_dim(spec.l, other.len(), "second window length")?;
    let l = spec.l;
    let period = l / spec.b;
    let scale = (l / spec.b) as f64;
    let mut s = CMatrix::zeros(l, l);
    // rows t < a determine the rest: the operator commutes with T_a, and
    // copying keeps that exact in floating point
    for t in 0..spec.a {
        let mut sp = t % period;
        while sp < l {
            let mut acc = Complex64::new(0.0, 0.0);
            for n in 0..spec.time_shifts() {
                let sh = n * spec.a;
                acc += spec.window[(t + l - sh) % l] * other[(sp + l - sh) % l].conj();
            }
            s[(t, sp)] = acc * scale;
            sp += period;
        }
    }
    for t in spec.a..l {
        let (t0, q) = (t % spec.a, t - t % spec.a);
        for sp in 0..l {
            s[(t, sp)] = s[(t0, (sp + l - q) % l)];
        }
    }
    Ok(s)
}

pub fn gabor_frame_bounds(spec: &GaborSpec) -> Result<FrameBounds> {
    let s = gabor_frame_operator(spec)?;
    let ev = linalg::hermitian_eigenvalues(&s);
    Ok(FrameBounds::new(ev[0].max(0.0), *ev.last().expect("L > 0")))
}

/// Frame bounds on the `(a, b)` lattice against Riesz bounds of the scaled
/// adjoint system; pass iff both agree to relative `tolerance`.
pub fn duality_principle_check(spec: &GaborSpec, tolerance: f64) -> Result<AnalysisReport> {
    let fb = frame::frame_bounds(&finite_gabor_system(spec)?, Mode::FullSpace)?;
    let rb = frame::riesz_bounds(&finite_gabor_system(&spec.adjoint())?)?;
    let gap = fb.relative_gap(&rb);
    Ok(AnalysisReport::from_residuals([("relative_gap", gap)], tolerance)
        .with_metric("lower", fb.lower)
        .with_metric("upper", fb.upper)
        .with_metric("adjoint_lower", rb.lower)
        .with_metric("adjoint_upper", rb.upper))
}

fn check_same_lattice(g: &GaborSpec, h: &GaborSpec) -> Result<()> {
    g.validate()?;
    h.validate()?;
    if (g.l, g.a, g.b) != (h.l, h.a, h.b) {
        return Err(FrameError::Precondition(format!(
            "lattices differ: (L,a,b) = ({},{},{}) vs ({},{},{})",
            g.l, g.a, g.b, h.l, h.a, h.b
        )));
    }
    Ok(())
}

/// Duality of the two Gabor systems against biorthogonality of their scaled
/// adjoint systems. Passes when the verdicts agree.
pub fn wexler_raz_check(g: &GaborSpec, h: &GaborSpec, tolerance: f64) -> Result<AnalysisReport> {
    check_same_lattice(g, h)?;
    let dual_res = frame::duality_residual(&finite_gabor_system(g)?, &finite_gabor_system(h)?)?;
    let bio_res = frame::biorthogonality_residual(
        &finite_gabor_system(&g.adjoint())?,
        &finite_gabor_system(&h.adjoint())?,
    )?;
    let dual_ok = dual_res <= tolerance;
    let bio_ok = bio_res <= tolerance;
    let verdict = if dual_ok == bio_ok { Verdict::Pass } else { Verdict::Fail };
    Ok(AnalysisReport::new(verdict, tolerance)
        .with_metric("duality_residual", dual_res)
        .with_metric("biorthogonality_residual", bio_res)
        .with_metric("dual_frames", f64::from(u8::from(dual_ok)))
        .with_metric("biorthogonal", f64::from(u8::from(bio_ok)))
        .with_note(format!("dual frames: {dual_ok}; adjoint systems biorthogonal: {bio_ok}")))
}

/// `S^{-1} g`, the window of the canonical dual.
pub fn canonical_dual_window(spec: &GaborSpec, tolerance: f64) -> Result<GaborSpec> {
    let s_inv = inverse_gabor_frame_operator(spec, tolerance)?;
    spec.with_window((s_inv * spec.window_vector()).iter().copied().collect())
}

fn inverse_gabor_frame_operator(spec: &GaborSpec, tolerance: f64) -> Result<CMatrix> {
    let s = gabor_frame_operator(spec)?;
    let ev = linalg::hermitian_eigenvalues(&s);
    let (lo, hi) = (ev[0], *ev.last().expect("L > 0"));
    if !(lo > tolerance.max(NOT_A_FRAME_RATIO * hi)) {
        return Err(FrameError::SingularFrame {
            lower: lo,
            tolerance: tolerance.max(NOT_A_FRAME_RATIO * hi),
        });
    }
    let approx = linalg::hermitian_function(&s, |x| 1.0 / x);
    Ok(linalg::refine_inverse(&s, approx, 2))
}

/// `max_{n,m} || S^{-1} M T - M T S^{-1} ||` where the shifts are taken from
/// the lattice `(op_a, op_b)`. With the system's own lattice this vanishes.
pub fn commutation_residual(spec: &GaborSpec, op_a: usize, op_b: usize, tolerance: f64) -> Result<f64> {
    let s_inv = inverse_gabor_frame_operator(spec, tolerance)?;
    let l = spec.l;
    if op_a == 0 || op_b == 0 || l % op_a != 0 || l % op_b != 0 {
        return Err(FrameError::Domain(format!("operator lattice ({op_a}, {op_b}) must divide L = {l}")));
    }
    let mut worst: f64 = 0.0;
    for n in 0..l / op_a {
        for m in 0..l / op_b {
            let op = tf_shift_matrix(l, n * op_a, m * op_b);
            let c = &s_inv * &op - &op * &s_inv;
            worst = worst.max(linalg::operator_norm(&c));
        }
    }
    Ok(worst)
}

/// Commutation of `S^{-1}` with the lattice operators, plus the check that
/// the canonical dual is the Gabor system of `S^{-1} g`.
pub fn frame_operator_commutation_check(spec: &GaborSpec, tolerance: f64) -> Result<AnalysisReport> {
    let comm = commutation_residual(spec, spec.a, spec.b, tolerance)?;
    let sys = finite_gabor_system(spec)?;
    let dual = frame::canonical_dual(&sys, Mode::FullSpace, tolerance)?;
    let dual_window = canonical_dual_window(spec, tolerance)?;
    let structured = finite_gabor_system(&dual_window)?;
    let structure = linalg::max_abs(&(dual.synthesis_matrix() - structured.synthesis_matrix()));
    Ok(AnalysisReport::from_residuals([("commutator", comm)], tolerance)
        .with_metric("dual_structure", structure))
}

/// Negative control: commutator against operators of a foreign lattice.
pub fn foreign_lattice_commutation_check(
    spec: &GaborSpec,
    op_a: usize,
    op_b: usize,
    tolerance: f64,
) -> Result<AnalysisReport> {
    let comm = commutation_residual(spec, op_a, op_b, tolerance)?;
    Ok(AnalysisReport::from_residuals([("commutator", comm)], tolerance)
        .with_note(format!("operators taken from lattice ({op_a}, {op_b})")))
}

#[derive(Debug, Clone)]
pub struct FiniteExtension {
    pub g2: Vec<Complex64>,
    pub h2: Vec<Complex64>,
    pub union_duality_residual: f64,
    pub g2_is_zero: bool,
}

/// `max(|w|)` below which an extension window counts as zero.
pub const ZERO_WINDOW_THRESHOLD: f64 = 1e-12;

/// Default dual pair on the lattice: `r1 = r2 = sqrt(b/L) chi_[0,a)`.
/// Exists iff `a b <= L`.
pub fn default_dual_windows(l: usize, a: usize, b: usize) -> Result<Vec<Complex64>> {
    if a * b > l {
        return Err(FrameError::Infeasible(format!(
            "a b = {} exceeds L = {l}: no dual pair exists on this lattice",
            a * b
        )));
    }
    let c = (b as f64 / l as f64).sqrt();
    Ok((0..l)
        .map(|t| Complex64::new(if t < a { c } else { 0.0 }, 0.0))
        .collect())
}

/// Extends Gabor Bessel systems of `g1`, `h1` to dual Gabor frames on the
/// same lattice by adding the systems of `g2 = (I - T U^*) r1` and `h2 = r2`.
pub fn gabor_extension_finite(
    l: usize,
    a: usize,
    b: usize,
    g1: &[Complex64],
    h1: &[Complex64],
) -> Result<FiniteExtension> {
    let g_spec = GaborSpec::new(l, a, b, g1.to_vec())?;
    let h_spec = GaborSpec::new(l, a, b, h1.to_vec())?;
    let r = default_dual_windows(l, a, b)?;
    // T U^* with T the synthesis of g1's system and U that of h1's
    let tu = mixed_frame_operator(&g_spec, h1)?;
    let phi_adj = CMatrix::identity(l, l) - tu;
    let g2: Vec<Complex64> = (phi_adj * CVector::from_column_slice(&r)).iter().copied().collect();
    let h2 = r;
    let f_union = finite_gabor_system(&g_spec)?.union(&finite_gabor_system(&g_spec.with_window(g2.clone())?)?)?;
    let g_union = finite_gabor_system(&h_spec)?.union(&finite_gabor_system(&h_spec.with_window(h2.clone())?)?)?;
    let res = frame::duality_residual(&f_union, &g_union)?;
    let g2_is_zero = g2.iter().all(|z| z.norm() <= ZERO_WINDOW_THRESHOLD);
    Ok(FiniteExtension {
        g2,
        h2,
        union_duality_residual: res,
        g2_is_zero,
    })
}

/// Divisors of `n` in increasing order.
pub fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n % d == 0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn single_element_system() {
        let w = vec![c(1.0), c(2.0), c(0.0), c(-1.0)];
        let sys = finite_gabor_system(&GaborSpec::new(4, 4, 4, w.clone()).unwrap()).unwrap();
        assert_eq!(sys.len(), 1);
        assert_eq!(sys.vectors()[0].as_slice(), w.as_slice());
    }

    #[test]
    fn delta_window_on_z2() {
        let spec = GaborSpec::real(2, 1, 1, &[1.0, 0.0]).unwrap();
        let sys = finite_gabor_system(&spec).unwrap();
        assert_eq!(sys.len(), 4);
        let b = frame::frame_bounds(&sys, Mode::FullSpace).unwrap();
        assert_relative_eq!(b.lower, 2.0, epsilon = 1e-12);
        assert_relative_eq!(b.upper, 2.0, epsilon = 1e-12);
    }

    #[test]
    fn full_lattice_is_tight_with_bound_l() {
        let mut rng = crate::random::rng(3);
        let spec = GaborSpec::new(4, 1, 1, crate::random::unit_window(&mut rng, 4)).unwrap();
        let b = frame::frame_bounds(&finite_gabor_system(&spec).unwrap(), Mode::FullSpace).unwrap();
        assert_relative_eq!(b.lower, 4.0, epsilon = 1e-12);
        assert_relative_eq!(b.upper, 4.0, epsilon = 1e-12);
    }

    #[test]
    fn rejects_non_divisors() {
        assert!(GaborSpec::real(6, 4, 1, &[1.0; 6]).is_err());
        assert!(GaborSpec::real(6, 2, 1, &[1.0; 5]).is_err());
    }

    #[test]
    fn structured_frame_operator_matches_dense() {
        let mut rng = crate::random::rng(4);
        for (l, a, b) in [(6, 2, 3), (8, 2, 2), (12, 4, 3), (12, 3, 2)] {
            let spec = GaborSpec::new(l, a, b, crate::random::unit_window(&mut rng, l)).unwrap();
            let dense = frame::frame_operator(&finite_gabor_system(&spec).unwrap());
            let fast = gabor_frame_operator(&spec).unwrap();
            assert!(linalg::max_abs(&(dense - fast)) < 1e-12);
        }
    }

    #[test]
    fn duality_principle_examples() {
        let spec = GaborSpec::real(4, 2, 2, &[1.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(duality_principle_check(&spec, 1e-10).unwrap().passed());

        let mut rng = crate::random::rng(5);
        let spec = GaborSpec::new(6, 2, 3, crate::random::unit_window(&mut rng, 6)).unwrap();
        assert!(duality_principle_check(&spec, 1e-10).unwrap().passed());

        let w = crate::random::complex_vector(&mut rng, 4);
        let norm2 = w.norm_squared();
        let spec = GaborSpec::new(4, 1, 1, w.iter().copied().collect()).unwrap();
        let rep = duality_principle_check(&spec, 1e-10).unwrap();
        assert!(rep.passed());
        for k in ["lower", "upper", "adjoint_lower", "adjoint_upper"] {
            assert_relative_eq!(rep.metric(k).unwrap(), 4.0 * norm2, max_relative = 1e-12);
        }
    }

    #[test]
    fn wexler_raz_examples() {
        let s = 0.5f64.sqrt();
        let g = GaborSpec::real(4, 2, 2, &[s, s, 0.0, 0.0]).unwrap();
        let rep = wexler_raz_check(&g, &g, 1e-10).unwrap();
        assert!(rep.passed());

        let mut rng = crate::random::rng(6);
        let g = GaborSpec::new(12, 2, 3, crate::random::unit_window(&mut rng, 12)).unwrap();
        let h = canonical_dual_window(&g, 1e-10).unwrap();
        let rep = wexler_raz_check(&g, &h, 1e-10).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.metric("dual_frames"), Some(1.0));
        assert_eq!(rep.metric("biorthogonal"), Some(1.0));

        let r = g.with_window(crate::random::unit_window(&mut rng, 12)).unwrap();
        let rep = wexler_raz_check(&g, &r, 1e-10).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.metric("dual_frames"), Some(0.0));
        assert_eq!(rep.metric("biorthogonal"), Some(0.0));

        let other = GaborSpec::real(12, 3, 2, &[1.0; 12]).unwrap();
        assert!(wexler_raz_check(&g, &other, 1e-10).is_err());
    }

    #[test]
    fn commutation_examples() {
        let spec = GaborSpec::real(4, 1, 1, &[1.0, 0.0, 0.0, 0.0]).unwrap();
        let rep = frame_operator_commutation_check(&spec, 1e-10).unwrap();
        assert_eq!(rep.residual("commutator"), Some(0.0));

        let mut rng = crate::random::rng(7);
        let spec = GaborSpec::new(12, 2, 3, crate::random::unit_window(&mut rng, 12)).unwrap();
        let rep = frame_operator_commutation_check(&spec, 1e-10).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert!(rep.metric("dual_structure").unwrap() < 1e-10);

        let rep = foreign_lattice_commutation_check(&spec, 1, 1, 1e-10).unwrap();
        assert!(!rep.passed());
        assert!(rep.residual("commutator").unwrap() > 1e-3);
    }

    #[test]
    fn commutation_rejects_singular_operator() {
        let spec = GaborSpec::real(4, 2, 2, &[1.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(matches!(
            frame_operator_commutation_check(&spec, 1e-10),
            Err(FrameError::SingularFrame { .. })
        ));
    }

    #[test]
    fn finite_extension_examples() {
        let (l, a, b) = (12, 2, 3);
        let r = default_dual_windows(l, a, b).unwrap();
        let ext = gabor_extension_finite(l, a, b, &r, &r).unwrap();
        assert!(ext.g2_is_zero);

        let zero = vec![c(0.0); l];
        let ext = gabor_extension_finite(l, a, b, &zero, &zero).unwrap();
        assert_eq!(ext.g2, r);
        assert_eq!(ext.h2, r);

        let mut rng = crate::random::rng(8);
        let g1 = crate::random::unit_window(&mut rng, l);
        let h1 = crate::random::unit_window(&mut rng, l);
        let ext = gabor_extension_finite(l, a, b, &g1, &h1).unwrap();
        assert!(ext.union_duality_residual <= 1e-10);

        assert!(matches!(
            gabor_extension_finite(12, 4, 6, &g1, &h1),
            Err(FrameError::Infeasible(_))
        ));
    }

    #[test]
    fn gabor_vectors_keep_window_norm() {
        let mut rng = crate::random::rng(9);
        let spec = GaborSpec::new(8, 2, 4, crate::random::unit_window(&mut rng, 8)).unwrap();
        for v in finite_gabor_system(&spec).unwrap().vectors() {
            assert!((v.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn spec_json_uses_capital_l() {
        let spec = GaborSpec::real(2, 1, 1, &[1.0, 0.0]).unwrap();
        let s = serde_json::to_string(&spec).unwrap();
        assert!(s.contains("\"L\":2"));
        let back: GaborSpec = serde_json::from_str(&s).unwrap();
        assert_eq!(back, spec);
    }
}
