//! Extension of a pair of Bessel sequences to a pair of dual frames.
//!
//! With `T`, `U` the synthesis operators of `f` and `g`, and `(a, b)` any
//! dual pair, the systems `f ∪ {(I - U T^*)^* a_j}` and `g ∪ {b_j}` are dual:
//! `U T^* + B A^* (I - U T^*) = I`.

use crate::error::{check_dim, FrameError, Result};
use crate::frame::{self, Mode, VectorSystem};
use crate::linalg::{self, CMatrix};
use crate::report::AnalysisReport;

#[derive(Debug, Clone)]
pub struct Extension {
    pub p_sys: VectorSystem,
    pub q_sys: VectorSystem,
    /// True when every added `p_j` vanishes, i.e. `(f, g)` was already dual.
    pub p_is_zero: bool,
}

impl Extension {
    /// Drops the zero vectors of `p` together with their partners in `q`.
    pub fn pruned(&self, threshold: f64) -> Result<(VectorSystem, VectorSystem)> {
        let dim = self.p_sys.ambient_dim();
        let keep: Vec<usize> = (0..self.p_sys.len())
            .filter(|&j| linalg::norm(&self.p_sys.vectors()[j]) > threshold)
            .collect();
        let p = keep.iter().map(|&j| self.p_sys.vectors()[j].clone()).collect();
        let q = keep.iter().map(|&j| self.q_sys.vectors()[j].clone()).collect();
        Ok((
            VectorSystem::new(dim, p, "p (pruned)")?,
            VectorSystem::new(dim, q, "q (pruned)")?,
        ))
    }
}

/// Threshold on `||p_j||` below which the added vectors count as zero.
pub const ZERO_VECTOR_THRESHOLD: f64 = 1e-12;

/// `(I - U T^*)^*` for the synthesis operators of `f` and `g`.
pub fn defect_adjoint(f_sys: &VectorSystem, g_sys: &VectorSystem) -> Result<CMatrix> {
    check_dim(f_sys.len(), g_sys.len(), "f and g lengths")?;
    check_dim(f_sys.ambient_dim(), g_sys.ambient_dim(), "f and g ambient dims")?;
    let d = f_sys.ambient_dim();
    let t = f_sys.synthesis_matrix();
    let u = g_sys.synthesis_matrix();
    // (I - U T^*)^* = I - T U^*
    Ok(CMatrix::identity(d, d) - t * u.adjoint())
}

/// Extends `(f, g)` using the auxiliary dual pair `(a, b)`.
pub fn extend_to_dual_pair(
    f_sys: &VectorSystem,
    g_sys: &VectorSystem,
    a_sys: &VectorSystem,
    b_sys: &VectorSystem,
    tolerance: f64,
) -> Result<Extension> {
    let d = f_sys.ambient_dim();
    check_dim(d, a_sys.ambient_dim(), "auxiliary ambient dim")?;
    check_dim(d, b_sys.ambient_dim(), "auxiliary ambient dim")?;
    check_dim(a_sys.len(), b_sys.len(), "auxiliary lengths")?;
    let aux = frame::duality_residual(a_sys, b_sys)?;
    if aux > tolerance {
        return Err(FrameError::Precondition(format!(
            "auxiliary pair (a, b) is not dual (residual {aux:e})"
        )));
    }
    let phi_adj = defect_adjoint(f_sys, g_sys)?;
    let p_sys = a_sys.mapped(&phi_adj)?.with_label("p");
    let q_sys = b_sys.clone().with_label("q");
    let p_is_zero = p_sys
        .vectors()
        .iter()
        .all(|v| linalg::norm(v) <= ZERO_VECTOR_THRESHOLD);
    Ok(Extension {
        p_sys,
        q_sys,
        p_is_zero,
    })
}

/// Extension with the standard basis as auxiliary dual pair.
pub fn extend_with_standard_basis(
    f_sys: &VectorSystem,
    g_sys: &VectorSystem,
    tolerance: f64,
) -> Result<Extension> {
    let onb = VectorSystem::standard_basis(f_sys.ambient_dim())?;
    extend_to_dual_pair(f_sys, g_sys, &onb, &onb, tolerance)
}

/// Duality of `(f ∪ p, g ∪ q)` plus frame bounds of both unions.
pub fn verify_extension(
    f_sys: &VectorSystem,
    g_sys: &VectorSystem,
    p_sys: &VectorSystem,
    q_sys: &VectorSystem,
    tolerance: f64,
) -> Result<AnalysisReport> {
    let fp = f_sys.union(p_sys)?;
    let gq = g_sys.union(q_sys)?;
    let res = frame::duality_residual(&fp, &gq)?;
    let bf = frame::frame_bounds(&fp, Mode::FullSpace)?;
    let bg = frame::frame_bounds(&gq, Mode::FullSpace)?;
    let mut rep = AnalysisReport::from_residuals([("union_duality", res)], tolerance)
        .with_metric("union_f_lower", bf.lower)
        .with_metric("union_f_upper", bf.upper)
        .with_metric("union_g_lower", bg.lower)
        .with_metric("union_g_upper", bg.upper)
        .with_metric("added_vectors", p_sys.len() as f64);
    if rep.passed() && (bf.lower <= 0.0 || bg.lower <= 0.0) {
        rep = rep.with_note("dual pair found but a union has zero lower bound");
        rep.verdict = crate::report::Verdict::Fail;
    }
    Ok(rep)
}

/// `max_k || (I - U T^*) e_k - sum_j <e_k, p_j> q_j ||` over the standard
/// basis: the defect operator against its reconstruction through `(p, q)`.
pub fn defect_reconstruction_residual(
    f_sys: &VectorSystem,
    g_sys: &VectorSystem,
    p_sys: &VectorSystem,
    q_sys: &VectorSystem,
) -> Result<f64> {
    let d = f_sys.ambient_dim();
    let defect = defect_adjoint(f_sys, g_sys)?.adjoint();
    let via_pq = q_sys.synthesis_matrix() * p_sys.synthesis_matrix().adjoint();
    let diff = defect - via_pq;
    let _ = d;
    Ok(diff.column_iter().map(|c| c.norm()).fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;

    #[test]
    fn empty_input_copies_auxiliary_pair() {
        let empty = VectorSystem::empty(3).unwrap();
        let onb = VectorSystem::standard_basis(3).unwrap();
        let ext = extend_to_dual_pair(&empty, &empty, &onb, &onb, 1e-10).unwrap();
        assert!(linalg::max_abs(&(ext.p_sys.synthesis_matrix() - onb.synthesis_matrix())) < 1e-15);
        assert!(linalg::max_abs(&(ext.q_sys.synthesis_matrix() - onb.synthesis_matrix())) < 1e-15);
        assert!(!ext.p_is_zero);
    }

    #[test]
    fn already_dual_input_adds_zero_vectors() {
        let onb = VectorSystem::standard_basis(3).unwrap();
        let ext = extend_to_dual_pair(&onb, &onb, &onb, &onb, 1e-10).unwrap();
        assert!(ext.p_is_zero);
        assert_eq!(ext.p_sys.len(), 3);
        let rep = verify_extension(&onb, &onb, &ext.p_sys, &ext.q_sys, 1e-10).unwrap();
        assert!(rep.passed());
        let (p, q) = ext.pruned(ZERO_VECTOR_THRESHOLD).unwrap();
        assert!(p.is_empty() && q.is_empty());
    }

    #[test]
    fn random_bessel_pair_extends() {
        let mut rng = random::rng(11);
        let f = random::system(&mut rng, 4, 2);
        let g = random::system(&mut rng, 4, 2);
        let a = random::system(&mut rng, 4, 6);
        let b = frame::canonical_dual(&a, Mode::FullSpace, 1e-10).unwrap();
        let ext = extend_to_dual_pair(&f, &g, &a, &b, 1e-10).unwrap();
        let rep = verify_extension(&f, &g, &ext.p_sys, &ext.q_sys, 1e-10).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert!(defect_reconstruction_residual(&f, &g, &ext.p_sys, &ext.q_sys).unwrap() < 1e-12);
    }

    #[test]
    fn rejects_non_dual_auxiliary_pair() {
        let mut rng = random::rng(12);
        let f = random::system(&mut rng, 3, 1);
        let a = random::system(&mut rng, 3, 3);
        let b = random::system(&mut rng, 3, 3);
        assert!(matches!(
            extend_to_dual_pair(&f, &f, &a, &b, 1e-10),
            Err(FrameError::Precondition(_))
        ));
    }

    #[test]
    fn unrelated_systems_fail_verification() {
        let mut rng = random::rng(13);
        let f = random::system(&mut rng, 3, 2);
        let g = random::system(&mut rng, 3, 2);
        let a = random::system(&mut rng, 3, 3);
        let b = random::system(&mut rng, 3, 3);
        let rep = verify_extension(&f, &g, &a, &b, 1e-10).unwrap();
        assert!(!rep.passed());
        assert!(rep.residual("union_duality").unwrap() > 1e-3);
    }
}
