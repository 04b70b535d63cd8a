use std::f64::consts::PI;

use framelab::exponentials::{crude_bound, decay_study, exp_gram, lower_bound, Family, LambdaSet};
use framelab::linalg::{hermitian_eigenvalues, hermitian_part};
use framelab::quad::GaussLegendre;
use framelab::{Complex64, FrameError};
use proptest::prelude::*;

fn lambda_set() -> impl Strategy<Value = LambdaSet> {
    prop::collection::vec(0.05..1.5f64, 1..=8).prop_map(|gaps| {
        let mut acc = -2.0;
        let ls: Vec<f64> = gaps
            .into_iter()
            .map(|g| {
                acc += g;
                acc
            })
            .collect();
        LambdaSet::new(ls).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn gram_is_hermitian_psd(ls in lambda_set()) {
        let g = exp_gram(&ls);
        let ev = hermitian_eigenvalues(&hermitian_part(&g));
        prop_assert!(ev[0] >= -1e-10);
        for j in 0..ls.len() {
            prop_assert_eq!(g[(j, j)], Complex64::new(2.0 * PI, 0.0));
        }
    }

    #[test]
    fn gram_matches_quadrature(ls in lambda_set()) {
        let g = exp_gram(&ls);
        let rule = GaussLegendre::new(20);
        let l = ls.lambdas();
        for j in 0..l.len() {
            for k in 0..l.len() {
                let d = l[j] - l[k];
                let q = rule.integrate_complex(|x| Complex64::from_polar(1.0, d * x), -PI, PI, 8);
                prop_assert!((g[(j, k)] - q).norm() <= 1e-10);
            }
        }
    }

    #[test]
    fn crude_bound_is_below_exact(ls in lambda_set()) {
        let lb = lower_bound(&ls).unwrap();
        let crude = crude_bound(ls.len(), ls.delta().min(1.0)).unwrap();
        prop_assert!(crude.log10 <= lb.log10());
    }

    #[test]
    fn lower_bound_is_shift_invariant(ls in lambda_set(), c in -5.0..5.0f64) {
        let a = lower_bound(&ls).unwrap();
        let b = lower_bound(&ls.shifted(c).unwrap()).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * a.max(1.0) + 1e-12);
    }
}

#[test]
fn two_point_set() {
    let lb = lower_bound(&LambdaSet::new(vec![0.0, 0.5]).unwrap()).unwrap();
    assert!((lb - (2.0 * PI - 4.0)).abs() <= 1e-10);
}

#[test]
fn half_integer_family_decays() {
    let s = decay_study(&Family::half_integers(), 40).unwrap();
    assert!(s.strictly_decreasing);
    assert!(s.crude_below_exact);
    assert!(s.rows.last().unwrap().lower_bound < 1e-3);
}

#[test]
fn integer_family_stays_orthogonal() {
    let s = decay_study(&Family::integers(), 10).unwrap();
    assert!(s.rows.iter().all(|r| (r.lower_bound - 2.0 * PI).abs() < 1e-10));
    assert!(s.crude_below_exact);
}

#[test]
fn invalid_sets_and_gaps() {
    assert!(LambdaSet::new(vec![0.0, 0.0]).is_err());
    assert!(LambdaSet::new(vec![1.0, 0.5]).is_err());
    assert!(matches!(crude_bound(2, 1.5), Err(FrameError::Precondition(_))));
    let c = crude_bound(60, 0.1).unwrap();
    assert_eq!(c.value, 0.0);
    assert!(c.log10.is_finite() && c.log10 < -700.0);
}
