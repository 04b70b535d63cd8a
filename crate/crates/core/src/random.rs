//! Seeded random instances for sweeps and property tests.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::dilation::{CSet, FreqFunction, WavePacketGrid};
use crate::frame::VectorSystem;
use crate::linalg::{CMatrix, CVector};

pub type SweepRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SweepRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard complex Gaussian entry (independent real/imaginary parts).
pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

pub fn complex_vector<R: Rng + ?Sized>(rng: &mut R, len: usize) -> CVector {
    CVector::from_fn(len, |_, _| complex_normal(rng))
}

pub fn complex_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| complex_normal(rng))
}

pub fn system<R: Rng + ?Sized>(rng: &mut R, dim: usize, count: usize) -> VectorSystem {
    VectorSystem::from_columns(&complex_matrix(rng, dim, count), "random")
        .expect("dim is positive")
}

/// Random unitary matrix via QR of a Gaussian matrix.
pub fn unitary<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> CMatrix {
    let qr = complex_matrix(rng, dim, dim).qr();
    let q = qr.q();
    let r = qr.r();
    // fix the phase of each column so the distribution is Haar
    let mut q = q;
    for k in 0..dim {
        let d = r[(k, k)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..dim {
            q[(i, k)] *= phase;
        }
    }
    q
}

/// Random orthonormal basis of `C^dim`.
pub fn orthonormal_basis<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> VectorSystem {
    VectorSystem::from_columns(&unitary(rng, dim), "random ONB").expect("dim is positive")
}

/// Random unit-norm window of length `len`.
pub fn unit_window<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<Complex64> {
    let v = complex_vector(rng, len);
    let n = v.norm();
    v.iter().map(|z| z / n).collect()
}

/// Band-limited generator with a small wave-packet index set: one or two
/// random intervals on the `1/8` grid inside `[-1, 1]`, or a B-spline of
/// order 1 to 3, with dilations from `{1/2, 1, 2}`, `b` in `{1/2, 1}` and
/// up to four shifts `c_m` on the `1/4` grid.
pub fn wave_packet_instance<R: Rng + ?Sized>(rng: &mut R) -> (FreqFunction, WavePacketGrid) {
    let g = if rng.random_bool(0.75) {
        let pieces = rng.random_range(1..=2);
        let mut ends: Vec<i32> = (0..2 * pieces).map(|_| rng.random_range(-8..=8)).collect();
        ends.sort_unstable();
        ends.dedup();
        if ends.len() % 2 == 1 {
            ends.pop();
        }
        if ends.is_empty() {
            ends = vec![-2, 3];
        }
        FreqFunction::Indicator {
            intervals: ends.chunks(2).map(|w| (f64::from(w[0]) / 8.0, f64::from(w[1]) / 8.0)).collect(),
            scale: rng.random_range(0.5..2.0),
        }
    } else {
        FreqFunction::BSpline {
            order: rng.random_range(1..=3),
        }
    };
    let mut a_values: Vec<f64> = [0.5, 1.0, 2.0].into_iter().filter(|_| rng.random_bool(0.6)).collect();
    if a_values.is_empty() {
        a_values.push(1.0);
    }
    let b = if rng.random_bool(0.5) { 0.5 } else { 1.0 };
    let mut cs: Vec<i32> = (0..rng.random_range(1..=4)).map(|_| rng.random_range(-6..=6)).collect();
    cs.sort_unstable();
    cs.dedup();
    let c_values = CSet::List(cs.into_iter().map(|c| f64::from(c) / 4.0).collect());
    (g, WavePacketGrid::new(a_values, b, c_values))
}

/// `n` independent seeds drawn from `seed`, one per sweep item, so results
/// do not depend on the order in which items are processed.
pub fn derived_seeds(seed: u64, n: usize) -> Vec<u64> {
    let mut r = rng(seed);
    (0..n).map(|_| r.random()).collect()
}
