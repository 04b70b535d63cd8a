//! Dense complex linear algebra helpers on top of nalgebra.
//!
//! Inner products are linear in the first argument:
//! `<x, y> = sum_t x[t] * conj(y[t])`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

pub fn inner(x: &CVector, y: &CVector) -> Complex64 {
    x.iter().zip(y.iter()).map(|(a, b)| a * b.conj()).sum()
}

pub fn norm(x: &CVector) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `(m + m^*) / 2`.
pub fn hermitian_part(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()).scale(0.5)
}

/// Eigenvalues of a Hermitian matrix in ascending order.
///
/// The input is symmetrized first so that rounding asymmetry cannot leak
/// into the spectrum.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    let eig = hermitian_part(m).symmetric_eigen();
    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    vals.sort_by(f64::total_cmp);
    vals
}

/// Eigen-decomposition of a Hermitian matrix: ascending eigenvalues and the
/// matching unit eigenvectors as columns.
pub fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = m.nrows();
    if n == 0 {
        return (Vec::new(), CMatrix::zeros(0, 0));
    }
    let eig = hermitian_part(m).symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let vals = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vecs = CMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    (vals, vecs)
}

/// `V diag(f(lambda)) V^*` for a Hermitian matrix.
pub fn hermitian_function<F: Fn(f64) -> f64>(m: &CMatrix, f: F) -> CMatrix {
    let (vals, vecs) = hermitian_eigen(m);
    let n = vals.len();
    let mut scaled = vecs.clone();
    for (c, &v) in vals.iter().enumerate() {
        let s = f(v);
        for r in 0..n {
            scaled[(r, c)] *= s;
        }
    }
    scaled * vecs.adjoint()
}

/// Singular values, unordered. The matrix is rescaled to unit max-modulus
/// first; should the SVD still fail to converge, the square roots of the
/// eigenvalues of `M^* M` are used instead.
fn raw_singular_values(m: &CMatrix) -> Vec<f64> {
    let scale = max_abs(m);
    if scale == 0.0 || !scale.is_finite() {
        return vec![if scale == 0.0 { 0.0 } else { f64::NAN }; m.nrows().min(m.ncols())];
    }
    let scaled = m.unscale(scale);
    let svd = nalgebra::SVD::try_new_unordered(scaled.clone(), false, false, f64::EPSILON, 10_000);
    let vals: Option<Vec<f64>> = svd
        .map(|d| d.singular_values.iter().copied().collect::<Vec<f64>>())
        .filter(|v| v.iter().all(|x| x.is_finite()));
    let vals = vals.unwrap_or_else(|| {
        let g = if m.nrows() >= m.ncols() {
            scaled.adjoint() * &scaled
        } else {
            &scaled * scaled.adjoint()
        };
        hermitian_eigenvalues(&g).into_iter().map(|x| x.max(0.0).sqrt()).collect()
    });
    vals.into_iter().map(|x| x * scale).collect()
}

/// Largest singular value (spectral norm).
pub fn operator_norm(m: &CMatrix) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    raw_singular_values(m).into_iter().fold(0.0, f64::max)
}

/// Singular values in ascending order.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut s = raw_singular_values(m);
    s.sort_by(f64::total_cmp);
    s
}

/// Error-free `a + b = s + e`.
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

/// `sum_k x_k y_k` accumulated in twice the working precision.
fn dot2(terms: impl Iterator<Item = (f64, f64)>) -> f64 {
    let (mut s, mut c) = (0.0, 0.0);
    for (x, y) in terms {
        let p = x * y;
        let pe = x.mul_add(y, -p);
        let (t, e) = two_sum(s, p);
        s = t;
        c += e + pe;
    }
    s + c
}

/// `I - m x` with every entry accumulated in twice the working precision.
pub fn identity_residual(m: &CMatrix, x: &CMatrix) -> CMatrix {
    let n = m.ncols();
    CMatrix::from_fn(m.nrows(), x.ncols(), |i, j| {
        let d = if i == j { 1.0 } else { 0.0 };
        let re = dot2(
            std::iter::once((d, 1.0)).chain((0..n).flat_map(|k| {
                let (a, b) = (m[(i, k)], x[(k, j)]);
                [(-a.re, b.re), (a.im, b.im)]
            })),
        );
        let im = dot2((0..n).flat_map(|k| {
            let (a, b) = (m[(i, k)], x[(k, j)]);
            [(-a.re, b.im), (-a.im, b.re)]
        }));
        Complex64::new(re, im)
    })
}

/// Newton steps `x <- x + x (I - m x)` with compensated residuals; each step
/// roughly squares the relative error of an approximate inverse `x` of `m`.
pub fn refine_inverse(m: &CMatrix, mut x: CMatrix, steps: usize) -> CMatrix {
    for _ in 0..steps {
        let r = identity_residual(m, &x);
        x += &x * r;
    }
    x
}

/// Largest entrywise modulus.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Largest entrywise modulus of `m - I`.
pub fn max_abs_minus_identity(m: &CMatrix) -> f64 {
    let mut worst: f64 = 0.0;
    for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            let target = if r == c { ONE } else { ZERO };
            worst = worst.max((m[(r, c)] - target).norm());
        }
    }
    worst
}

/// Machine-epsilon based numerical-rank cutoff for a Hermitian PSD spectrum.
pub fn rank_cutoff(dim: usize, largest: f64) -> f64 {
    dim.max(1) as f64 * f64::EPSILON * largest.max(0.0)
}
