//! Finite frames: synthesis/analysis/frame operators, optimal frame and
//! Riesz bounds, canonical duals and dual-pair verification.

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, FrameError, Result};
use crate::linalg::{self, CMatrix, CVector, ONE, ZERO};
use crate::report::AnalysisReport;
use num_complex::Complex64;

/// Ratio `lower / upper` below which a system is declared not to satisfy the
/// lower frame condition.
pub const NOT_A_FRAME_RATIO: f64 = 1e-10;

/// An ordered finite family of vectors in `C^ambient_dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorSystem {
    ambient_dim: usize,
    vectors: Vec<CVector>,
    label: String,
}

impl VectorSystem {
    pub fn new(ambient_dim: usize, vectors: Vec<CVector>, label: impl Into<String>) -> Result<Self> {
        if ambient_dim == 0 {
            return Err(FrameError::Domain("ambient dimension must be positive".into()));
        }
        for v in &vectors {
            check_dim(ambient_dim, v.len(), "vector length vs ambient_dim")?;
        }
        Ok(Self {
            ambient_dim,
            vectors,
            label: label.into(),
        })
    }

    pub fn empty(ambient_dim: usize) -> Result<Self> {
        Self::new(ambient_dim, Vec::new(), "empty")
    }

    /// The columns of `m` as a system in `C^{m.nrows()}`.
    pub fn from_columns(m: &CMatrix, label: impl Into<String>) -> Result<Self> {
        let vectors = m.column_iter().map(|c| c.into_owned()).collect();
        Self::new(m.nrows(), vectors, label)
    }

    pub fn from_real_rows(rows: &[&[f64]], label: impl Into<String>) -> Result<Self> {
        let dim = rows.first().map(|r| r.len()).unwrap_or(0);
        let vectors = rows
            .iter()
            .map(|r| CVector::from_iterator(r.len(), r.iter().map(|&x| Complex64::new(x, 0.0))))
            .collect();
        Self::new(dim, vectors, label)
    }

    pub fn standard_basis(dim: usize) -> Result<Self> {
        Self::from_columns(&CMatrix::identity(dim, dim), "standard basis")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[CVector] {
        &self.vectors
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// `ambient_dim x len` matrix whose columns are the vectors.
    pub fn synthesis_matrix(&self) -> CMatrix {
        let mut m = CMatrix::zeros(self.ambient_dim, self.len());
        for (k, v) in self.vectors.iter().enumerate() {
            m.set_column(k, v);
        }
        m
    }

    /// Concatenation `self ∪ other`, preserving order.
    pub fn union(&self, other: &VectorSystem) -> Result<Self> {
        check_dim(self.ambient_dim, other.ambient_dim, "union ambient dims")?;
        let mut vectors = self.vectors.clone();
        vectors.extend(other.vectors.iter().cloned());
        Self::new(
            self.ambient_dim,
            vectors,
            format!("{} ∪ {}", self.label, other.label),
        )
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Self {
            ambient_dim: self.ambient_dim,
            vectors: self.vectors.iter().map(|v| v * c).collect(),
            label: self.label.clone(),
        }
    }

    /// Applies a linear map to every vector.
    pub fn mapped(&self, m: &CMatrix) -> Result<Self> {
        check_dim(self.ambient_dim, m.ncols(), "operator columns vs ambient_dim")?;
        let vectors = self.vectors.iter().map(|v| m * v).collect();
        Self::new(m.nrows(), vectors, self.label.clone())
    }
}

/// Pair of frame (or Riesz) bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrameBounds {
    pub lower: f64,
    pub upper: f64,
}

impl FrameBounds {
    pub fn new(lower: f64, upper: f64) -> Self {
        Self { lower, upper }
    }

    /// Lower condition holds relative to the upper bound.
    pub fn is_frame(&self, ratio_threshold: f64) -> bool {
        self.upper > 0.0 && self.lower / self.upper >= ratio_threshold
    }

    pub fn is_tight(&self, rtol: f64) -> bool {
        (self.upper - self.lower).abs() <= rtol * self.upper.abs().max(f64::MIN_POSITIVE)
    }

    /// Largest difference of corresponding bounds, relative to the larger
    /// upper bound of the two pairs.
    pub fn relative_gap(&self, other: &FrameBounds) -> f64 {
        let scale = self.upper.abs().max(other.upper.abs());
        if scale == 0.0 {
            return 0.0;
        }
        let dl = (self.lower - other.lower).abs();
        let du = (self.upper - other.upper).abs();
        dl.max(du) / scale
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    #[default]
    FullSpace,
    Span,
}

/// `sum_k c_k f_k`.
pub fn synthesis(sys: &VectorSystem, coeffs: &[Complex64]) -> Result<CVector> {
    check_dim(sys.len(), coeffs.len(), "coefficients vs system length")?;
    let mut out = CVector::zeros(sys.ambient_dim());
    for (c, v) in coeffs.iter().zip(sys.vectors()) {
        out.axpy(*c, v, ONE);
    }
    Ok(out)
}

/// `(<f, f_k>)_k`.
pub fn analysis(sys: &VectorSystem, f: &CVector) -> Result<Vec<Complex64>> {
    check_dim(sys.ambient_dim(), f.len(), "vector vs ambient_dim")?;
    Ok(sys.vectors().iter().map(|v| linalg::inner(f, v)).collect())
}

/// `S = T T^*`, Hermitian by construction.
pub fn frame_operator(sys: &VectorSystem) -> CMatrix {
    let t = sys.synthesis_matrix();
    linalg::hermitian_part(&(&t * t.adjoint()))
}

/// Gram matrix `G[j][k] = <f_k, f_j>`.
pub fn gram(sys: &VectorSystem) -> CMatrix {
    let t = sys.synthesis_matrix();
    linalg::hermitian_part(&(t.adjoint() * &t))
}

/// Optimal frame bounds from the spectrum of the frame operator.
///
/// In [`Mode::Span`] the lower bound is the smallest eigenvalue above the
/// numerical-rank cutoff `ambient_dim * eps * lambda_max`.
pub fn frame_bounds(sys: &VectorSystem, mode: Mode) -> Result<FrameBounds> {
    if mode == Mode::Span && sys.is_empty() {
        return Err(FrameError::Domain(
            "span mode needs a nonempty system".into(),
        ));
    }
    let eig = linalg::hermitian_eigenvalues(&frame_operator(sys));
    Ok(bounds_from_spectrum(&eig, sys.ambient_dim(), mode))
}

pub(crate) fn bounds_from_spectrum(eig: &[f64], dim: usize, mode: Mode) -> FrameBounds {
    let upper = eig.last().copied().unwrap_or(0.0).max(0.0);
    let lower = match mode {
        Mode::FullSpace => eig.first().copied().unwrap_or(0.0).max(0.0),
        Mode::Span => {
            let cut = linalg::rank_cutoff(dim, upper);
            eig.iter().copied().find(|&x| x > cut).unwrap_or(0.0)
        }
    };
    FrameBounds::new(lower.min(upper), upper)
}

/// Optimal Riesz bounds: extreme eigenvalues of the Gram matrix.
///
/// When there are more vectors than dimensions the Gram matrix is rank
/// deficient, so the lower bound is exactly zero and the upper bound is read
/// off the (smaller) frame operator, which shares the nonzero spectrum.
pub fn riesz_bounds(sys: &VectorSystem) -> Result<FrameBounds> {
    if sys.is_empty() {
        return Err(FrameError::Domain("Riesz bounds need a nonempty system".into()));
    }
    if sys.len() > sys.ambient_dim() {
        let eig = linalg::hermitian_eigenvalues(&frame_operator(sys));
        let upper = eig.last().copied().unwrap_or(0.0).max(0.0);
        return Ok(FrameBounds::new(0.0, upper));
    }
    let eig = linalg::hermitian_eigenvalues(&gram(sys));
    let upper = eig.last().copied().unwrap_or(0.0).max(0.0);
    let lower = eig.first().copied().unwrap_or(0.0).max(0.0);
    Ok(FrameBounds::new(lower.min(upper), upper))
}

/// Inverse (full space) or pseudo-inverse (span) of the frame operator.
pub fn inverse_frame_operator(sys: &VectorSystem, mode: Mode, tolerance: f64) -> Result<CMatrix> {
    let s = frame_operator(sys);
    let eig = linalg::hermitian_eigenvalues(&s);
    let bounds = bounds_from_spectrum(&eig, sys.ambient_dim(), mode);
    if !(bounds.lower > tolerance) {
        return Err(FrameError::SingularFrame {
            lower: bounds.lower,
            tolerance,
        });
    }
    let cut = match mode {
        Mode::FullSpace => 0.0,
        Mode::Span => linalg::rank_cutoff(sys.ambient_dim(), bounds.upper),
    };
    Ok(linalg::hermitian_function(&s, |x| if x > cut { 1.0 / x } else { 0.0 }))
}

/// Canonical dual `{S^{-1} f_k}` (pseudo-inverse in span mode).
pub fn canonical_dual(sys: &VectorSystem, mode: Mode, tolerance: f64) -> Result<VectorSystem> {
    let s_inv = inverse_frame_operator(sys, mode, tolerance)?;
    Ok(sys
        .mapped(&s_inv)?
        .with_label(format!("canonical dual of {}", sys.label())))
}

/// `sup_f ||f - sum_k <f, g_k> f_k||` over a probe orthonormal basis: the
/// full standard basis, or a basis of `span(f)` in span mode.
pub fn reconstruction_residual(f_sys: &VectorSystem, g_sys: &VectorSystem, mode: Mode) -> Result<f64> {
    check_dim(f_sys.len(), g_sys.len(), "system lengths")?;
    check_dim(f_sys.ambient_dim(), g_sys.ambient_dim(), "ambient dims")?;
    let d = f_sys.ambient_dim();
    let t = f_sys.synthesis_matrix();
    let u = g_sys.synthesis_matrix();
    let defect = CMatrix::identity(d, d) - &t * u.adjoint();
    let probes = match mode {
        Mode::FullSpace => CMatrix::identity(d, d),
        Mode::Span => {
            let (vals, vecs) = linalg::hermitian_eigen(&frame_operator(f_sys));
            let top = vals.last().copied().unwrap_or(0.0);
            let cut = linalg::rank_cutoff(d, top);
            let keep: Vec<usize> = (0..vals.len()).filter(|&i| vals[i] > cut).collect();
            CMatrix::from_fn(d, keep.len(), |r, c| vecs[(r, keep[c])])
        }
    };
    let applied = defect * probes;
    Ok(applied
        .column_iter()
        .map(|c| c.norm())
        .fold(0.0, f64::max))
}

/// Residual `||I - U T^*||` where `T`, `U` synthesize `f_sys`, `g_sys`;
/// zero exactly when `f = sum_k <f, f_k> g_k` for all `f`.
pub fn duality_residual(f_sys: &VectorSystem, g_sys: &VectorSystem) -> Result<f64> {
    check_dim(f_sys.len(), g_sys.len(), "system lengths")?;
    check_dim(f_sys.ambient_dim(), g_sys.ambient_dim(), "ambient dims")?;
    let d = f_sys.ambient_dim();
    let t = f_sys.synthesis_matrix();
    let u = g_sys.synthesis_matrix();
    let defect = CMatrix::identity(d, d) - u * t.adjoint();
    Ok(linalg::operator_norm(&defect))
}

pub fn duality_check(f_sys: &VectorSystem, g_sys: &VectorSystem, tolerance: f64) -> Result<AnalysisReport> {
    let r = duality_residual(f_sys, g_sys)?;
    Ok(AnalysisReport::from_residuals([("duality", r)], tolerance))
}

/// `M[j][k] = <f_j, g_k>`.
pub fn cross_gram(f_sys: &VectorSystem, g_sys: &VectorSystem) -> Result<CMatrix> {
    check_dim(f_sys.ambient_dim(), g_sys.ambient_dim(), "ambient dims")?;
    let t = f_sys.synthesis_matrix();
    let u = g_sys.synthesis_matrix();
    // (U^* T)[k][j] = <f_j, g_k>
    Ok((u.adjoint() * t).transpose())
}

/// `max |<f_j, g_k> - delta_jk|`.
pub fn biorthogonality_residual(f_sys: &VectorSystem, g_sys: &VectorSystem) -> Result<f64> {
    check_dim(f_sys.len(), g_sys.len(), "system lengths")?;
    let m = cross_gram(f_sys, g_sys)?;
    Ok(linalg::max_abs_minus_identity(&m))
}

/// Orthonormality residual of a system against itself.
pub fn orthonormality_residual(sys: &VectorSystem) -> f64 {
    linalg::max_abs_minus_identity(&gram(sys))
}

/// Convenience: the zero vector of the system's ambient space.
pub fn zero_vector(sys: &VectorSystem) -> CVector {
    CVector::from_element(sys.ambient_dim(), ZERO)
}
