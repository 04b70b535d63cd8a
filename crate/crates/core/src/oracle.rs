//! Spectrum-free reference computations used to cross-check the spectral
//! routines.

use rand::Rng;

use crate::frame::{FrameBounds, VectorSystem};
use crate::linalg::CVector;
use crate::random::complex_vector;

fn rayleigh(sys: &VectorSystem, x: &CVector) -> f64 {
    let nx = x.norm_squared();
    sys.vectors().iter().map(|f| x.dotc(f).norm_sqr()).sum::<f64>() / nx
}

fn climb<R: Rng + ?Sized>(rng: &mut R, sys: &VectorSystem, start: CVector, sign: f64) -> f64 {
    let d = sys.ambient_dim();
    let mut x = start.normalize();
    let mut best = sign * rayleigh(sys, &x);
    let mut step = 0.5;
    while step > 1e-7 {
        let mut improved = false;
        for _ in 0..8 * d {
            let cand = (&x + complex_vector(rng, d).scale(step)).normalize();
            let v = sign * rayleigh(sys, &cand);
            if v > best {
                best = v;
                x = cand;
                improved = true;
            }
        }
        if !improved {
            step *= 0.6;
        }
    }
    sign * best
}

/// Extremes of `sum_k |<x, f_k>|^2` over the unit sphere, by random starts
/// followed by a shrinking-step random search.
pub fn rayleigh_extremes<R: Rng + ?Sized>(rng: &mut R, sys: &VectorSystem, starts: usize) -> FrameBounds {
    let d = sys.ambient_dim();
    let samples: Vec<(f64, CVector)> = (0..starts.max(1))
        .map(|_| {
            let x = complex_vector(rng, d).normalize();
            (rayleigh(sys, &x), x)
        })
        .collect();
    let pick = |better: fn(f64, f64) -> bool| {
        samples
            .iter()
            .fold(None::<&(f64, CVector)>, |acc, s| match acc {
                Some(a) if !better(s.0, a.0) => Some(a),
                _ => Some(s),
            })
            .map(|s| s.1.clone())
            .expect("at least one start")
    };
    let lo_start = pick(|a, b| a < b);
    let hi_start = pick(|a, b| a > b);
    let lower = climb(rng, sys, lo_start, -1.0);
    let upper = climb(rng, sys, hi_start, 1.0);
    FrameBounds::new(lower.max(0.0), upper)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::{frame_bounds, Mode};
    use crate::random::{rng, system};

    #[test]
    fn agrees_with_spectrum() {
        let mut r = rng(3);
        for _ in 0..10 {
            let s = system(&mut r, 3, 5);
            let o = rayleigh_extremes(&mut r, &s, 64);
            let fb = frame_bounds(&s, Mode::FullSpace).unwrap();
            assert!((o.lower - fb.lower).abs() < 1e-3 && (o.upper - fb.upper).abs() < 1e-3, "{o:?} {fb:?}");
        }
    }
}
