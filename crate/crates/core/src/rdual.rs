//! R-duals of finite sequences with respect to a pair of orthonormal bases.
//!
//! In finite dimension the index set of the sequence must have the same size
//! as the bases, so every input family has exactly `N = dim H` vectors. Under
//! that constraint "frame for H" and "Riesz basis" coincide; the subspace
//! situation is reached through [`n_sequence`], where the Riesz sequence may
//! live in a larger ambient space.

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, FrameError, Result};
use crate::frame::{self, FrameBounds, Mode, VectorSystem};
use crate::linalg::{self, CMatrix, CVector, ONE};
use crate::report::{AnalysisReport, Verdict};

/// Two orthonormal bases of the same space.
#[derive(Debug, Clone)]
pub struct OrthonormalPair {
    e_basis: VectorSystem,
    h_basis: VectorSystem,
}

impl OrthonormalPair {
    pub const ORTHONORMALITY_TOLERANCE: f64 = 1e-10;

    pub fn new(e_basis: VectorSystem, h_basis: VectorSystem) -> Result<Self> {
        let n = e_basis.ambient_dim();
        check_dim(n, h_basis.ambient_dim(), "basis ambient dims")?;
        check_dim(n, e_basis.len(), "e-basis size")?;
        check_dim(n, h_basis.len(), "h-basis size")?;
        for (name, b) in [("e", &e_basis), ("h", &h_basis)] {
            let r = frame::orthonormality_residual(b);
            if r > Self::ORTHONORMALITY_TOLERANCE {
                return Err(FrameError::Precondition(format!(
                    "{name}-basis is not orthonormal (residual {r:e})"
                )));
            }
        }
        Ok(Self { e_basis, h_basis })
    }

    pub fn standard(n: usize) -> Result<Self> {
        let b = VectorSystem::standard_basis(n)?;
        Self::new(b.clone(), b)
    }

    pub fn e_basis(&self) -> &VectorSystem {
        &self.e_basis
    }

    pub fn h_basis(&self) -> &VectorSystem {
        &self.h_basis
    }

    pub fn dim(&self) -> usize {
        self.e_basis.ambient_dim()
    }

    /// The pair with the roles of the bases exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            e_basis: self.h_basis.clone(),
            h_basis: self.e_basis.clone(),
        }
    }
}

fn check_square(sys: &VectorSystem, pair: &OrthonormalPair) -> Result<()> {
    let n = pair.dim();
    if sys.ambient_dim() != n {
        return Err(FrameError::Dimension {
            expected: n,
            got: sys.ambient_dim(),
            context: "sequence ambient dim vs bases",
        });
    }
    if sys.len() != n {
        return Err(FrameError::Model(format!(
            "a finite R-dual needs exactly N = dim H = {n} vectors (got {}); \
             the index set of the sequence and of the orthonormal bases must coincide",
            sys.len()
        )));
    }
    Ok(())
}

/// `omega_j = sum_i <f_i, e_j> h_i`.
pub fn r_dual(f_sys: &VectorSystem, pair: &OrthonormalPair) -> Result<VectorSystem> {
    check_square(f_sys, pair)?;
    let n = pair.dim();
    let e = pair.e_basis().vectors();
    let h = pair.h_basis().vectors();
    let omega = (0..n)
        .map(|j| {
            let mut w = CVector::zeros(n);
            for (i, f) in f_sys.vectors().iter().enumerate() {
                w.axpy(linalg::inner(f, &e[j]), &h[i], ONE);
            }
            w
        })
        .collect();
    VectorSystem::new(n, omega, format!("R-dual of {}", f_sys.label()))
}

/// Residual of `f_i = sum_j <omega_j, h_i> e_j`.
pub fn r_dual_inverse_residual(
    f_sys: &VectorSystem,
    omega_sys: &VectorSystem,
    pair: &OrthonormalPair,
) -> Result<f64> {
    check_square(f_sys, pair)?;
    check_square(omega_sys, pair)?;
    let n = pair.dim();
    let e = pair.e_basis().vectors();
    let h = pair.h_basis().vectors();
    let mut worst: f64 = 0.0;
    for (i, f) in f_sys.vectors().iter().enumerate() {
        let mut rebuilt = CVector::zeros(n);
        for (j, w) in omega_sys.vectors().iter().enumerate() {
            rebuilt.axpy(linalg::inner(w, &h[i]), &e[j], ONE);
        }
        worst = worst.max(linalg::norm(&(f - rebuilt)));
    }
    Ok(worst)
}

pub fn r_dual_inverse_check(
    f_sys: &VectorSystem,
    omega_sys: &VectorSystem,
    pair: &OrthonormalPair,
    tolerance: f64,
) -> Result<AnalysisReport> {
    let r = r_dual_inverse_residual(f_sys, omega_sys, pair)?;
    Ok(AnalysisReport::from_residuals([("inverse", r)], tolerance))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RDualReport {
    pub bessel_f: FrameBounds,
    pub bessel_omega: FrameBounds,
    pub frame_f: FrameBounds,
    pub riesz_omega: FrameBounds,
    pub involution_residual: f64,
    pub biorthogonality_residual: Option<f64>,
    /// Relative disagreement of the frame bounds of `f` and the Riesz bounds
    /// of `omega`, scaled by the upper bound.
    pub bound_gap: f64,
    pub verdict: Verdict,
    pub tolerance_used: f64,
}

/// Computes the R-dual and compares frame bounds of `f` with Riesz bounds of
/// the R-dual (lower and upper), plus the Bessel bounds on both sides.
pub fn verify_rdual_theorem(
    f_sys: &VectorSystem,
    pair: &OrthonormalPair,
    tolerance: f64,
) -> Result<RDualReport> {
    let omega = r_dual(f_sys, pair)?;
    let frame_f = frame::frame_bounds(f_sys, Mode::FullSpace)?;
    let riesz_omega = frame::riesz_bounds(&omega)?;
    // Bessel bound of omega as a sequence in H (upper frame bound)
    let bessel_omega = FrameBounds::new(0.0, frame::frame_bounds(&omega, Mode::FullSpace)?.upper);
    let bessel_f = FrameBounds::new(0.0, frame_f.upper);
    let back = r_dual(&omega, &pair.swapped())?;
    let involution_residual = linalg::max_abs(&(back.synthesis_matrix() - f_sys.synthesis_matrix()));
    let bound_gap = frame_f.relative_gap(&riesz_omega);
    let bessel_gap = bessel_f.relative_gap(&bessel_omega);
    let ok = bound_gap <= tolerance && bessel_gap <= tolerance && involution_residual <= tolerance.max(1e-12);
    Ok(RDualReport {
        bessel_f,
        bessel_omega,
        frame_f,
        riesz_omega,
        involution_residual,
        biorthogonality_residual: None,
        bound_gap,
        verdict: if ok { Verdict::Pass } else { Verdict::Fail },
        tolerance_used: tolerance,
    })
}

/// Dual-frame property of `(f, g)` against biorthogonality of their
/// R-duals. Passes when the two verdicts agree.
pub fn verify_dual_pair_biorthogonality(
    f_sys: &VectorSystem,
    g_sys: &VectorSystem,
    pair: &OrthonormalPair,
    tolerance: f64,
) -> Result<AnalysisReport> {
    check_square(f_sys, pair)?;
    check_square(g_sys, pair)?;
    let dual_res = frame::duality_residual(f_sys, g_sys)?;
    let omega = r_dual(f_sys, pair)?;
    let gamma = r_dual(g_sys, pair)?;
    let bio_res = frame::biorthogonality_residual(&omega, &gamma)?;
    let dual_ok = dual_res <= tolerance;
    let bio_ok = bio_res <= tolerance;
    let verdict = if dual_ok == bio_ok { Verdict::Pass } else { Verdict::Fail };
    let mut rep = AnalysisReport::new(verdict, tolerance)
        .with_metric("duality_residual", dual_res)
        .with_metric("biorthogonality_residual", bio_res)
        .with_metric("dual_frames", f64::from(u8::from(dual_ok)))
        .with_metric("biorthogonal", f64::from(u8::from(bio_ok)));
    rep = rep.with_note(format!(
        "dual frames: {dual_ok}; R-duals biorthogonal: {bio_ok}; verdicts {}",
        if dual_ok == bio_ok { "agree" } else { "disagree" }
    ));
    Ok(rep)
}

#[derive(Debug, Clone)]
pub struct NSequence {
    pub vectors: VectorSystem,
    /// Frame bounds of the n-sequence on `W = span(omega)`.
    pub tight_bound_estimate: FrameBounds,
    /// `max(|A - 1|, |B - 1|)`: zero exactly for a tight frame of bound 1.
    pub unit_tightness_residual: f64,
}

impl NSequence {
    pub fn is_tight(&self, rtol: f64) -> bool {
        self.tight_bound_estimate.is_tight(rtol)
    }

    pub fn is_unit_tight(&self, tol: f64) -> bool {
        self.unit_tightness_residual <= tol
    }
}

/// `n_i = sum_k <e_k, f_i> omega~_k`, with `omega~` the dual Riesz sequence
/// of `omega` inside its span.
///
/// `f_sys` lives in `C^N` (`N` vectors, `e` an orthonormal basis of `C^N`);
/// `omega_sys` has `N` vectors in `C^M`, `M >= N`, and spans `W`.
pub fn n_sequence(
    f_sys: &VectorSystem,
    omega_sys: &VectorSystem,
    e_basis: &VectorSystem,
    tolerance: f64,
) -> Result<NSequence> {
    let n = e_basis.ambient_dim();
    check_dim(n, e_basis.len(), "e-basis size")?;
    check_dim(n, f_sys.ambient_dim(), "f ambient dim vs e-basis")?;
    check_dim(n, f_sys.len(), "f length vs e-basis")?;
    check_dim(n, omega_sys.len(), "omega length vs e-basis")?;
    let r = frame::orthonormality_residual(e_basis);
    if r > OrthonormalPair::ORTHONORMALITY_TOLERANCE {
        return Err(FrameError::Precondition(format!(
            "e-basis is not orthonormal (residual {r:e})"
        )));
    }
    let riesz = frame::riesz_bounds(omega_sys)?;
    if !(riesz.lower > tolerance) {
        return Err(FrameError::SingularFrame {
            lower: riesz.lower,
            tolerance,
        });
    }
    let g = frame::gram(omega_sys);
    let g_inv = linalg::hermitian_function(&g, |x| 1.0 / x);
    let omega_dual = omega_sys.synthesis_matrix() * g_inv;
    let e = e_basis.vectors();
    let coeffs = CMatrix::from_fn(n, n, |k, i| linalg::inner(&e[k], &f_sys.vectors()[i]));
    let n_mat = omega_dual * coeffs;
    let vectors = VectorSystem::from_columns(&n_mat, "n-sequence")?;
    let bounds = frame::frame_bounds(&vectors, Mode::Span)?;
    let unit = (bounds.lower - 1.0).abs().max((bounds.upper - 1.0).abs());
    Ok(NSequence {
        vectors,
        tight_bound_estimate: bounds,
        unit_tightness_residual: unit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use num_complex::Complex64;

    fn diag123() -> VectorSystem {
        VectorSystem::from_real_rows(&[&[1.0, 0.0, 0.0], &[0.0, 2.0, 0.0], &[0.0, 0.0, 3.0]], "diag").unwrap()
    }

    #[test]
    fn r_dual_of_e_basis_is_h_basis() {
        let mut rng = crate::random::rng(1);
        let e = crate::random::orthonormal_basis(&mut rng, 4);
        let h = crate::random::orthonormal_basis(&mut rng, 4);
        let pair = OrthonormalPair::new(e.clone(), h.clone()).unwrap();
        let omega = r_dual(&e, &pair).unwrap();
        assert!(linalg::max_abs(&(omega.synthesis_matrix() - h.synthesis_matrix())) < 1e-12);

        let c = Complex64::new(0.5, -2.0);
        let omega = r_dual(&e.scaled(c), &pair).unwrap();
        // <c e_i, e_j> = c delta_ij
        assert!(linalg::max_abs(&(omega.synthesis_matrix() - h.synthesis_matrix() * c)) < 1e-12);
    }

    #[test]
    fn r_dual_rejects_wrong_count() {
        let pair = OrthonormalPair::standard(3).unwrap();
        let f = VectorSystem::from_real_rows(&[&[1.0, 0.0, 0.0]], "short").unwrap();
        assert!(matches!(r_dual(&f, &pair), Err(FrameError::Model(_))));
    }

    #[test]
    fn pair_requires_orthonormal_bases() {
        let b = diag123();
        assert!(OrthonormalPair::new(b.clone(), b).is_err());
    }

    #[test]
    fn inverse_check_examples() {
        let mut rng = crate::random::rng(2);
        let e = crate::random::orthonormal_basis(&mut rng, 3);
        let h = crate::random::orthonormal_basis(&mut rng, 3);
        let pair = OrthonormalPair::new(e.clone(), h.clone()).unwrap();
        assert!(r_dual_inverse_check(&e, &h, &pair, 1e-10).unwrap().passed());

        let f = crate::random::system(&mut rng, 3, 3);
        let omega = r_dual(&f, &pair).unwrap();
        let rep = r_dual_inverse_check(&f, &omega, &pair, 1e-12).unwrap();
        assert!(rep.passed(), "{rep:?}");

        let bump = CMatrix::from_fn(3, 3, |r, c| if r == 0 && c == 1 { Complex64::new(1e-3, 0.0) } else { Complex64::new(0.0, 0.0) });
        let perturbed = VectorSystem::from_columns(&(omega.synthesis_matrix() + &bump), "p").unwrap();
        let rep = r_dual_inverse_check(&f, &perturbed, &pair, 1e-10).unwrap();
        assert!(!rep.passed());

        let std_pair = OrthonormalPair::standard(3).unwrap();
        let omega = r_dual(&f, &std_pair).unwrap();
        let perturbed = VectorSystem::from_columns(&(omega.synthesis_matrix() + bump), "p").unwrap();
        let rep = r_dual_inverse_check(&f, &perturbed, &std_pair, 1e-10).unwrap();
        assert_relative_eq!(rep.residual("inverse").unwrap(), 1e-3, max_relative = 1e-6);
    }

    #[test]
    fn rdual_bounds_on_diagonal_example() {
        let pair = OrthonormalPair::standard(3).unwrap();
        let rep = verify_rdual_theorem(&diag123(), &pair, 1e-10).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
        assert_relative_eq!(rep.frame_f.lower, 1.0, epsilon = 1e-12);
        assert_relative_eq!(rep.frame_f.upper, 9.0, epsilon = 1e-12);
        assert_relative_eq!(rep.riesz_omega.lower, 1.0, epsilon = 1e-12);
        assert_relative_eq!(rep.riesz_omega.upper, 9.0, epsilon = 1e-12);

        let onb = VectorSystem::standard_basis(3).unwrap();
        let rep = verify_rdual_theorem(&onb, &pair, 1e-10).unwrap();
        for x in [rep.frame_f.lower, rep.frame_f.upper, rep.riesz_omega.lower, rep.riesz_omega.upper] {
            assert_relative_eq!(x, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn biorthogonality_examples() {
        let pair = OrthonormalPair::standard(3).unwrap();
        let onb = VectorSystem::standard_basis(3).unwrap();
        let rep = verify_dual_pair_biorthogonality(&onb, &onb, &pair, 1e-10).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.metric("dual_frames"), Some(1.0));

        let scaled = onb.scaled(Complex64::new(2.0, 0.0));
        let rep = verify_dual_pair_biorthogonality(&onb, &scaled, &pair, 1e-10).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.metric("dual_frames"), Some(0.0));
        assert_eq!(rep.metric("biorthogonal"), Some(0.0));

        let f = diag123();
        let g = frame::canonical_dual(&f, Mode::FullSpace, 1e-10).unwrap();
        let rep = verify_dual_pair_biorthogonality(&f, &g, &pair, 1e-10).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.metric("dual_frames"), Some(1.0));
    }

    #[test]
    fn n_sequence_examples() {
        let onb = VectorSystem::standard_basis(3).unwrap();
        let ns = n_sequence(&onb, &onb, &onb, 1e-10).unwrap();
        assert!(ns.is_unit_tight(1e-12));
        assert!(linalg::max_abs(&(ns.vectors.synthesis_matrix() - onb.synthesis_matrix())) < 1e-14);

        let omega = onb.scaled(Complex64::new(2.0, 0.0));
        let ns = n_sequence(&onb, &omega, &onb, 1e-10).unwrap();
        assert!(ns.is_tight(1e-12));
        assert!(!ns.is_unit_tight(1e-6));
        assert_relative_eq!(ns.tight_bound_estimate.lower, 0.25, epsilon = 1e-14);
        assert_relative_eq!(ns.tight_bound_estimate.upper, 0.25, epsilon = 1e-14);

        let dup = VectorSystem::from_real_rows(&[&[1.0, 0.0, 0.0], &[1.0, 0.0, 0.0], &[0.0, 0.0, 1.0]], "d").unwrap();
        assert!(matches!(
            n_sequence(&onb, &dup, &onb, 1e-10),
            Err(FrameError::SingularFrame { .. })
        ));
    }
}
