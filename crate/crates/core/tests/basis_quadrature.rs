use approx::assert_relative_eq;
use proptest::prelude::*;

use detkernel::quadrature::{gauss_rule_for, integrate_nd};
use detkernel::{
    gauss_rule, gauss_rule_unweighted, integrate_1d, monic_norms, wave_function, Domain, Error, FunctionSet, Measure,
    OrthoFamily,
};

#[test]
fn monic_families_are_orthogonal_under_their_weight() {
    for family in OrthoFamily::ALL {
        let rule = gauss_rule(family.domain(), 64).unwrap();
        let norms = monic_norms(family, 9).unwrap();
        for j in 0..=8 {
            for k in 0..=8 {
                let v = integrate_1d(|x| family.monic(j, x) * family.monic(k, x), &rule).unwrap();
                if j == k {
                    assert_relative_eq!(v, norms[j], max_relative = 1e-10);
                } else {
                    assert!(v.abs() <= 1e-10 * norms[j].max(norms[k]), "{family} {j},{k}: {v}");
                }
            }
        }
    }
}

#[test]
fn wave_functions_are_orthonormal_under_dx() {
    for family in OrthoFamily::ALL {
        let rule = gauss_rule_unweighted(family.domain(), 64).unwrap();
        for j in 0..=8 {
            for k in 0..=8 {
                let v = integrate_1d(
                    |x| wave_function(family, j, x).unwrap() * wave_function(family, k, x).unwrap(),
                    &rule,
                )
                .unwrap();
                let want = if j == k { 1.0 } else { 0.0 };
                assert!((v - want).abs() <= 1e-10, "{family} {j},{k}: {v}");
            }
        }
    }
}

#[test]
fn gauss_rules_integrate_polynomials_exactly() {
    let rule = gauss_rule(Domain::Interval { a: -2.0, b: 3.0 }, 5).unwrap();
    for d in 0..10 {
        let want = (3f64.powi(d + 1) - (-2f64).powi(d + 1)) / f64::from(d + 1);
        assert_relative_eq!(integrate_1d(|x| x.powi(d), &rule).unwrap(), want, max_relative = 1e-13);
    }
    let hermite = gauss_rule(Domain::RealLine, 6).unwrap();
    assert_relative_eq!(
        integrate_1d(|x| x * x, &hermite).unwrap(),
        std::f64::consts::PI.sqrt() / 2.0,
        max_relative = 1e-13
    );
    let laguerre = gauss_rule(Domain::HalfLine, 6).unwrap();
    assert_relative_eq!(
        integrate_1d(|x| x.powi(5), &laguerre).unwrap(),
        120.0,
        max_relative = 1e-13
    );
}

#[test]
fn refinement_does_not_increase_error() {
    let want = 1.0 - (-1.0f64).exp();
    let mut last = f64::INFINITY;
    for m in [2, 4, 8, 16] {
        let rule = gauss_rule(Domain::unit(), m).unwrap();
        let err = (integrate_1d(|x| (-x).exp(), &rule).unwrap() - want).abs();
        assert!(err <= last.max(1e-15), "m = {m}: {err} > {last}");
        last = err;
    }
    assert!(last < 1e-14);
}

#[test]
fn tensor_rule_factorizes() {
    let rule = gauss_rule(Domain::unit(), 8).unwrap();
    let v = integrate_nd(|x| x[0] * x[1] * x[1] * x[2].powi(3), &rule, 3).unwrap();
    assert_relative_eq!(v, 1.0 / 24.0, max_relative = 1e-13);
}

#[test]
fn invalid_inputs_are_rejected() {
    assert!(matches!(
        gauss_rule(Domain::unit(), 0),
        Err(Error::NodeCountOutOfRange { .. })
    ));
    assert!(gauss_rule(Domain::Interval { a: 1.0, b: 1.0 }, 4).is_err());
    assert!(gauss_rule_for(Domain::unit(), Measure::Gaussian, 4).is_err());
    assert!(matches!(
        wave_function(OrthoFamily::Laguerre, 1, -1.0),
        Err(Error::OutsideDomain { .. })
    ));
    let set = FunctionSet::monomials(Domain::unit(), 3).unwrap();
    assert!(matches!(set.eval(0, 2.0), Err(Error::OutsideDomain { .. })));
    assert!(matches!(set.eval(5, 0.5), Err(Error::IndexOutOfRange { .. })));
}

proptest! {
    #[test]
    fn interval_rules_preserve_length(a in -5.0f64..5.0, len in 0.1f64..10.0, m in 1usize..40) {
        let rule = gauss_rule(Domain::Interval { a, b: a + len }, m).unwrap();
        let total: f64 = rule.weights().iter().sum();
        prop_assert!((total - len).abs() <= 1e-12 * len);
        prop_assert!(rule.nodes().iter().all(|&x| a <= x && x <= a + len));
    }

    #[test]
    fn wave_functions_are_finite(k in 0usize..=20, x in -30.0f64..30.0) {
        for family in OrthoFamily::ALL {
            if family.domain().contains(x) {
                prop_assert!(wave_function(family, k, x).unwrap().is_finite());
            }
        }
    }
}
