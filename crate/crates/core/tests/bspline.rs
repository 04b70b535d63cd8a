use framelab::bspline::{
    bspline_eval, bspline_fourier, bspline_fourier_quadrature, dual_window_solve, gabor_scan, partition_residual,
    property_suite, scan_cell, truncated_power, CellStatus, ConvolutionOracle, ScanOptions, ORACLE_DENSITY,
};
use framelab::FrameError;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn recurrence_matches_convolution(n in 1..=8usize, i in 0..=512i64) {
        let o = ConvolutionOracle::new(n);
        let x = i as f64 / ORACLE_DENSITY as f64;
        prop_assert!((bspline_eval(n, x) - o.at_index(i)).abs() <= 1e-10);
    }

    #[test]
    fn recurrence_matches_truncated_powers(n in 1..=8usize, x in -1.0..9.0f64) {
        prop_assert!((bspline_eval(n, x) - truncated_power(n, x)).abs() <= 1e-10);
    }

    #[test]
    fn fourier_formula_matches_quadrature(n in 1..=6usize, g in -8.0..8.0f64) {
        prop_assert!((bspline_fourier(n, g) - bspline_fourier_quadrature(n, g)).norm() <= 1e-8);
    }

    #[test]
    fn partition_of_unity_pointwise(n in 1..=8usize, x in 0.0..1.0f64) {
        let s: f64 = (-10..=10).map(|k| bspline_eval(n, x + k as f64)).sum();
        prop_assert!((s - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn symmetric_about_half_support(n in 2..=8usize, x in 0.0..4.0f64) {
        let nf = n as f64;
        prop_assert!((bspline_eval(n, x) - bspline_eval(n, nf - x)).abs() <= 1e-12);
    }
}

#[test]
fn properties_pass_and_shifted_sum_fails() {
    for n in 1..=8 {
        assert!(property_suite(n, 1e-10).unwrap().passed(), "N = {n}");
    }
    assert!(partition_residual(2, 1.5) > 0.1);
}

#[test]
fn known_region_is_certified() {
    let a: Vec<f64> = (1..=7).map(|k| 0.25 * k as f64).collect();
    let b: Vec<f64> = (2..=9).map(|k| 0.05 * k as f64).collect();
    let cells = gabor_scan(2, &a, &b, &ScanOptions::default()).unwrap();
    assert_eq!(cells.len(), 56);
    for c in &cells {
        assert_eq!(c.status, CellStatus::FrameCertified, "{c:?}");
        assert!(c.bounds_estimate.lower > 0.0);
    }
}

#[test]
fn vanishing_diagonal_and_b_two() {
    let o = ScanOptions::default();
    for b in [0.1, 0.3, 0.5, 1.0, 2.0] {
        assert_eq!(scan_cell(2, 2.0, b, &o).unwrap().status, CellStatus::LowerBoundZeroCertified);
        assert_eq!(scan_cell(2, 2.5, b, &o).unwrap().status, CellStatus::LowerBoundZeroCertified);
    }
    for a in [0.1, 0.25, 0.5, 0.75, 1.0, 1.5, 1.9] {
        let c = scan_cell(2, a, 2.0, &o).unwrap();
        assert_ne!(c.status, CellStatus::FrameCertified, "{c:?}");
    }
}

#[test]
fn certified_bounds_sandwich_finite_sections() {
    let o = ScanOptions::default();
    let a: Vec<f64> = [0.25, 0.5, 0.75, 1.0, 1.25, 1.5].to_vec();
    let b: Vec<f64> = [0.2, 0.25, 0.4, 0.5, 0.6, 0.75, 1.0].to_vec();
    for n in [2, 3] {
        let mut checked = 0;
        for c in gabor_scan(n, &a, &b, &o).unwrap() {
            if let (CellStatus::FrameCertified, Some(fs)) = (c.status, c.finite_section) {
                assert!(c.bounds_estimate.lower <= fs.lower + 1e-9, "{c:?}");
                assert!(c.bounds_estimate.upper >= fs.upper - 1e-9, "{c:?}");
                checked += 1;
            }
        }
        assert!(checked > 10, "N = {n}: only {checked} cells checked");
    }
}

#[test]
fn dual_windows_verify() {
    for (n, b) in [(1, 1.0), (2, 0.25), (2, 1.0 / 3.0), (3, 0.2), (3, 0.125)] {
        let dw = dual_window_solve(n, b, n - 1, 1e-8).unwrap();
        assert!(dw.report.passed(), "N = {n}, b = {b}: {:?}", dw.report);
    }
    let dw = dual_window_solve(2, 0.25, 3, 1e-8).unwrap();
    assert!(dw.report.passed());
    assert!(matches!(dual_window_solve(2, 0.6, 1, 1e-8), Err(FrameError::Precondition(_))));
}
