//! Dual pairs of dyadic wavelet frames, checked in the frequency domain.

use std::collections::BTreeMap;

use num_complex::Complex64;

use super::FreqFunction;
use crate::error::{FrameError, Result};
use crate::report::AnalysisReport;

/// Points per half of the fundamental domain `±[1, 2)`.
const HALF_POINTS: usize = 2048;

/// Canonical key for `m / 2^j`: odd numerator and adjusted exponent.
fn dyadic_key(m: i64, j: i32) -> (i64, i32) {
    let s = m.trailing_zeros() as i32;
    (m >> s, j - s)
}

/// Conditions (i) `sum_j conj(psi^(2^j g)) psit^(2^j g) = b` and (ii) the
/// vanishing of every `alpha = m / 2^j != 0` group sum. Both conditions are
/// invariant under `gamma -> 2 gamma`, so they are evaluated on `±[1, 2)`.
pub fn wavelet_duality_check(
    psi: &FreqFunction,
    psi_t: &FreqFunction,
    b: f64,
    tolerance: f64,
) -> Result<AnalysisReport> {
    psi.validate()?;
    psi_t.validate()?;
    let (Some((r_lo, r_hi)), Some((t_lo, t_hi))) = (psi.abs_range(), psi_t.band()) else {
        // one generator vanishes: every sum is zero
        return Ok(AnalysisReport::from_residuals([("condition_i", b.abs()), ("condition_ii", 0.0)], tolerance)
            .with_note("a generator is zero"));
    };
    if r_lo <= 0.0 {
        return Err(FrameError::Truncation(
            "support of psi^ reaches frequency 0, so infinitely many dilations contribute".into(),
        ));
    }
    // 2^j |gamma| in [r_lo, r_hi] with |gamma| in [1, 2)
    let j_lo = (r_lo / 2.0).log2().floor() as i32 - 1;
    let j_hi = r_hi.log2().ceil() as i32 + 1;
    let mut res_i: f64 = 0.0;
    let mut res_ii: f64 = 0.0;
    let mut groups: BTreeMap<(i64, i32), Complex64> = BTreeMap::new();
    for sign in [1.0, -1.0] {
        for i in 0..HALF_POINTS {
            let gamma = sign * (1.0 + i as f64 / HALF_POINTS as f64);
            let mut sum_i = Complex64::new(0.0, 0.0);
            groups.clear();
            for j in j_lo..=j_hi {
                let x = gamma * 2f64.powi(j);
                let p = psi.eval(x);
                if p.norm() == 0.0 {
                    continue;
                }
                sum_i += p.conj() * psi_t.eval(x);
                let m_lo = (t_lo - x).ceil() as i64;
                let m_hi = (t_hi - x).floor() as i64;
                for m in m_lo..=m_hi {
                    if m == 0 {
                        continue;
                    }
                    let v = p.conj() * psi_t.eval(x + m as f64);
                    *groups.entry(dyadic_key(m, j)).or_default() += v;
                }
            }
            res_i = res_i.max((sum_i - b).norm());
            res_ii = groups.values().map(|z| z.norm()).fold(res_ii, f64::max);
        }
    }
    Ok(AnalysisReport::from_residuals([("condition_i", res_i), ("condition_ii", res_ii)], tolerance)
        .with_metric("b", b)
        .with_metric("grid_points", (2 * HALF_POINTS) as f64))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shannon_pair_is_dual() {
        let s = FreqFunction::shannon();
        let rep = wavelet_duality_check(&s, &s, 1.0, 1e-12).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.residual("condition_i"), Some(0.0));
        assert_eq!(rep.residual("condition_ii"), Some(0.0));
    }

    #[test]
    fn zero_partner_fails_with_residual_b() {
        let rep = wavelet_duality_check(&FreqFunction::shannon(), &FreqFunction::zero(), 1.0, 1e-12).unwrap();
        assert!(!rep.passed());
        assert_eq!(rep.residual("condition_i"), Some(1.0));
    }

    #[test]
    fn reciprocal_scaling_keeps_duality() {
        let s = FreqFunction::shannon();
        let rep = wavelet_duality_check(&s.scaled(2.0), &s.scaled(0.5), 1.0, 1e-12).unwrap();
        assert!(rep.passed());
    }

    #[test]
    fn perturbation_moves_condition_i_linearly() {
        let s = FreqFunction::shannon();
        for eps in [1e-3, 1e-5] {
            let rep = wavelet_duality_check(&s, &s.scaled(1.0 + eps), 1.0, 1e-12).unwrap();
            assert!((rep.residual("condition_i").unwrap() - eps).abs() < 1e-12);
        }
    }

    #[test]
    fn overlapping_bands_break_condition_ii() {
        // [1/2, 3/2) overlaps its own integer shifts under dilation
        let f = FreqFunction::Indicator {
            intervals: vec![(-1.5, -0.5), (0.5, 1.5)],
            scale: 1.0,
        };
        let rep = wavelet_duality_check(&f, &f, 1.0, 1e-12).unwrap();
        assert!(!rep.passed());
        assert!(rep.residual("condition_ii").unwrap() > 0.5);
    }

    #[test]
    fn band_at_zero_is_rejected() {
        let f = FreqFunction::indicator(0.0, 1.0);
        assert!(matches!(
            wavelet_duality_check(&f, &f, 1.0, 1e-12),
            Err(FrameError::Truncation(_))
        ));
    }

    #[test]
    fn dyadic_keys_are_canonical() {
        assert_eq!(dyadic_key(4, 3), dyadic_key(1, 1));
        assert_eq!(dyadic_key(-6, 0), dyadic_key(-3, -1));
        assert_ne!(dyadic_key(3, 1), dyadic_key(3, 2));
    }
}
