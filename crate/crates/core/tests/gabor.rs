use framelab::gabor::{
    canonical_dual_window, default_dual_windows, divisors, duality_principle_check, finite_gabor_system,
    foreign_lattice_commutation_check, frame_operator_commutation_check, gabor_extension, gabor_extension_finite,
    gabor_frame_bounds, hrt_independence_fn, ron_shen_duality_check, wexler_raz_check, GaborSpec, SampledWindow,
    TFPoint, HRT_CAVEAT,
};
use framelab::frame::{duality_residual, frame_bounds, Mode};
use framelab::random::{rng, unit_window};
use framelab::{Complex64, FrameError, Verdict};
use proptest::prelude::*;

fn lattice() -> impl Strategy<Value = (usize, usize, usize)> {
    prop::sample::select(vec![4usize, 6, 8, 12]).prop_flat_map(|l| {
        let d = divisors(l);
        (Just(l), prop::sample::select(d.clone()), prop::sample::select(d))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn duality_principle_holds((l, a, b) in lattice(), seed in any::<u64>()) {
        let w = unit_window(&mut rng(seed), l);
        let spec = GaborSpec::new(l, a, b, w).unwrap();
        let rep = duality_principle_check(&spec, 1e-10).unwrap();
        prop_assert!(rep.passed(), "{:?}", rep);
    }

    #[test]
    fn wexler_raz_verdicts_agree((l, a, b) in lattice(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = GaborSpec::new(l, a, b, unit_window(&mut r, l)).unwrap();
        let other = g.with_window(unit_window(&mut r, l)).unwrap();
        prop_assert!(wexler_raz_check(&g, &other, 1e-10).unwrap().passed());
        if let Ok(dual) = canonical_dual_window(&g, 1e-6) {
            let rep = wexler_raz_check(&g, &dual, 1e-10).unwrap();
            prop_assert!(rep.passed());
            prop_assert_eq!(rep.metric("dual_frames"), Some(1.0));
        }
    }

    #[test]
    fn structured_operator_matches_dense((l, a, b) in lattice(), seed in any::<u64>()) {
        let spec = GaborSpec::new(l, a, b, unit_window(&mut rng(seed), l)).unwrap();
        let structured = gabor_frame_bounds(&spec).unwrap();
        let dense = frame_bounds(&finite_gabor_system(&spec).unwrap(), Mode::FullSpace).unwrap();
        prop_assert!((structured.lower - dense.lower).abs() <= 1e-10 * dense.upper.max(1.0));
        prop_assert!((structured.upper - dense.upper).abs() <= 1e-10 * dense.upper.max(1.0));
    }

    #[test]
    fn inverse_frame_operator_commutes((l, a, b) in lattice(), seed in any::<u64>()) {
        let spec = GaborSpec::new(l, a, b, unit_window(&mut rng(seed), l)).unwrap();
        let fb = gabor_frame_bounds(&spec).unwrap();
        prop_assume!(fb.lower >= 1e-6);
        let rep = frame_operator_commutation_check(&spec, 1e-10).unwrap();
        prop_assert!(rep.passed(), "{:?}", rep);
        prop_assert!(rep.metric("dual_structure").unwrap() <= 1e-10);
    }

    #[test]
    fn finite_extension_produces_dual_frames((l, a, b) in lattice(), seed in any::<u64>()) {
        prop_assume!(a * b <= l);
        let mut r = rng(seed);
        let g1 = unit_window(&mut r, l);
        let h1 = unit_window(&mut r, l);
        let ext = gabor_extension_finite(l, a, b, &g1, &h1).unwrap();
        prop_assert!(ext.union_duality_residual <= 1e-10);
    }
}

#[test]
fn duality_principle_on_a_frame_with_redundancy() {
    // L = 6, a = 2, b = 3: 6 vectors in C^6
    let spec = GaborSpec::real(6, 2, 3, &[1.0, 0.5, 0.25, 0.0, 0.0, 0.0]).unwrap();
    let rep = duality_principle_check(&spec, 1e-10).unwrap();
    assert!(rep.passed());
    assert_eq!(spec.adjoint().l, 6);
    assert_eq!((spec.adjoint().a, spec.adjoint().b), (2, 3));
}

#[test]
fn foreign_lattice_breaks_commutation() {
    let mut r = rng(9);
    let spec = GaborSpec::new(12, 4, 3, unit_window(&mut r, 12)).unwrap();
    let rep = foreign_lattice_commutation_check(&spec, 1, 1, 1e-10).unwrap();
    assert!(!rep.passed());
}

#[test]
fn singular_system_is_rejected_by_commutation() {
    let spec = GaborSpec::real(8, 4, 4, &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
    assert!(matches!(
        frame_operator_commutation_check(&spec, 1e-10),
        Err(FrameError::SingularFrame { .. })
    ));
}

#[test]
fn default_duals_exist_iff_density_allows() {
    let r = default_dual_windows(8, 2, 4).unwrap();
    let spec = GaborSpec::new(8, 2, 4, r).unwrap();
    let sys = finite_gabor_system(&spec).unwrap();
    assert!(duality_residual(&sys, &sys).unwrap() < 1e-12);
    assert!(matches!(default_dual_windows(8, 4, 4), Err(FrameError::Infeasible(_))));
}

#[test]
fn already_dual_gabor_pair_needs_no_extension() {
    let mut r = rng(4);
    let g = GaborSpec::new(12, 2, 3, unit_window(&mut r, 12)).unwrap();
    let d = canonical_dual_window(&g, 1e-10).unwrap();
    let ext = gabor_extension_finite(12, 2, 3, &g.window, &d.window).unwrap();
    assert!(ext.g2_is_zero);
    assert!(ext.union_duality_residual < 1e-10);
}

#[test]
fn ron_shen_indicator_and_sampled_extension() {
    let h = 1.0 / 32.0;
    let chi = SampledWindow::indicator(0.0, 1.0, h).unwrap();
    let rep = ron_shen_duality_check(&chi, &chi, 1.0, 1.0, 1e-12).unwrap();
    assert!(rep.residual("ron_shen").unwrap() <= 1e-12);

    let half = SampledWindow::indicator(0.0, 0.5, h).unwrap();
    let ext = gabor_extension(&half, &half, 0.5, 1.0).unwrap();
    assert!(ext.union_duality_residual <= 1e-10);
    assert!(matches!(gabor_extension(&half, &half, 2.0, 1.0), Err(FrameError::Infeasible(_))));
}

#[test]
fn hrt_probe_reports_caveat() {
    let gauss = |x: f64| Complex64::new((-std::f64::consts::PI * x * x).exp(), 0.0);
    let pts = [
        TFPoint::new(0.0, 0.0),
        TFPoint::new(1.0, 0.0),
        TFPoint::new(0.0, 1.0),
        TFPoint::new(1.0, 1.0),
    ];
    let rep = hrt_independence_fn(gauss, (-6.0, 6.0), 1.0 / 32.0, &pts, None).unwrap();
    assert_eq!(rep.verdict, Verdict::Pass);
    assert!(rep.metric("sigma_min").unwrap() > 1e-3);
    assert!(rep.notes.contains(HRT_CAVEAT));
    let close = [TFPoint::new(0.0, 0.0), TFPoint::new(1e-9, 0.0)];
    let rep = hrt_independence_fn(gauss, (-6.0, 6.0), 1.0 / 32.0, &close, None).unwrap();
    assert_eq!(rep.verdict, Verdict::Undecided);
    assert!(rep.notes.contains("not a proof"));
}
