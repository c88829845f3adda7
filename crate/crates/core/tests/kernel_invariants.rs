use proptest::prelude::*;

use detkernel::fixtures::{Fixture, FixtureKind};
use detkernel::suite::{run_check, Check, VerifyOptions};
use detkernel::theorems::verify_theorem1;
use detkernel::{gauss_rule, integrate_1d, BilinearQ, Domain, FunctionSet, GeneralizedKernel, KernelMode, Member};

const NODES: usize = 40;

/// Random non-degenerate polynomial pair on `[0, 1]`: unit-triangular
/// mixtures of monomials, so both sets span the same polynomial space.
fn random_pair(n: usize, coeffs: &[f64]) -> Fixture {
    let mut it = coeffs.iter().copied();
    let mut build = || -> Vec<Member> {
        (0..n)
            .map(|j| {
                let mut terms = vec![(1.0, Member::monomial(j))];
                for d in 0..j {
                    terms.push((it.next().unwrap_or(0.0), Member::monomial(d)));
                }
                Member::combination(terms)
            })
            .collect()
    };
    let phi = FunctionSet::new(Domain::unit(), build()).unwrap();
    let psi = FunctionSet::new(Domain::unit(), build()).unwrap();
    Fixture::custom("random", phi, psi).unwrap()
}

fn kernel(f: &Fixture) -> GeneralizedKernel {
    f.kernel(NODES).unwrap()
}

#[test]
fn kernel_reproduces_phi_and_psi() {
    let f = FixtureKind::Mixed.build(4).unwrap();
    let k = kernel(&f);
    let rule = f.rule(NODES).unwrap();
    for p in [-0.7, 0.1, 0.55] {
        for j in 0..4 {
            let left = integrate_1d(|x| k.eval(p, x).unwrap() * f.phi.eval(j, x).unwrap(), &rule).unwrap();
            assert!((left - f.phi.eval(j, p).unwrap()).abs() < 1e-12, "phi_{j}({p})");
            let right = integrate_1d(|x| f.psi.eval(j, x).unwrap() * k.eval(x, p).unwrap(), &rule).unwrap();
            assert!((right - f.psi.eval(j, p).unwrap()).abs() < 1e-12, "psi_{j}({p})");
        }
    }
}

#[test]
fn orthonormal_sets_collapse_to_the_bilinear_form() {
    for kind in [
        FixtureKind::LegendreWave,
        FixtureKind::HermiteWave,
        FixtureKind::LaguerreWave,
    ] {
        let f = kind.build(5).unwrap();
        let k = kernel(&f);
        let q = BilinearQ::new(f.phi.clone(), f.psi.clone()).unwrap();
        let pts: Vec<f64> = match f.domain() {
            Domain::Interval { .. } => vec![-0.9, -0.2, 0.4, 0.8],
            Domain::RealLine => vec![-2.0, -0.5, 0.3, 1.7],
            Domain::HalfLine => vec![0.2, 1.0, 3.5, 5.0],
        };
        for &p in &pts {
            for &r in &pts {
                assert!((k.eval(p, r).unwrap() - q.eval(p, r).unwrap()).abs() < 1e-10);
            }
        }
    }
}

#[test]
fn degenerate_overlap_gives_rank_one_numerator() {
    let f = FixtureKind::DegenerateRank1.build(2).unwrap();
    let k = kernel(&f);
    assert_eq!(k.mode(), KernelMode::Unnormalized);
    assert!(k.eval(0.1, 0.2).is_err());
    let c = |p: f64, q: f64| k.eval_scaled(p, q).unwrap();
    let pts = [-0.8, -0.1, 0.35, 0.9];
    for &p1 in &pts {
        for &p2 in &pts {
            for &q1 in &pts {
                for &q2 in &pts {
                    let minor = c(p1, q1) * c(p2, q2) - c(p1, q2) * c(p2, q1);
                    assert!(minor.abs() < 1e-12);
                }
            }
        }
    }
    let rule = f.rule(NODES).unwrap();
    let p = [0.3];
    let report = verify_theorem1(&k, 1, &p, &[-0.6], &rule).unwrap();
    assert!(report.pass, "{report:?}");
}

#[test]
fn suite_checks_pass_on_every_nondegenerate_fixture() {
    let opts = VerifyOptions {
        oracle_nodes: NODES,
        seed: 5,
        n_max: 3,
    };
    for kind in FixtureKind::ALL.into_iter().filter(|k| !k.is_degenerate()) {
        let f = kind.build(3).unwrap();
        for check in [
            Check::Theorem1 { k: 1 },
            Check::Andreief,
            Check::Contraction { k: 2 },
            Check::Norm { k: 2 },
        ] {
            let r = run_check(check, &f, &opts).unwrap();
            assert!(r.pass, "{} {check:?}: {r:?}", f.label());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_pairs_satisfy_trace_and_contraction(
        n in 1usize..=4,
        coeffs in prop::collection::vec(-1.0f64..1.0, 12),
        p in 0.0f64..1.0,
        q in 0.0f64..1.0,
    ) {
        let f = random_pair(n, &coeffs);
        let k = kernel(&f);
        let rule = gauss_rule(Domain::unit(), NODES).unwrap();
        let trace = integrate_1d(|x| k.eval(x, x).unwrap(), &rule).unwrap();
        prop_assert!((trace - n as f64).abs() <= 1e-10 * n as f64);
        let contracted = integrate_1d(|x| k.eval(p, x).unwrap() * k.eval(x, q).unwrap(), &rule).unwrap();
        let direct = k.eval(p, q).unwrap();
        prop_assert!((contracted - direct).abs() <= 1e-10 * (1.0 + direct.abs()));
        prop_assert!((k.tabulate(&[p], &[q]).unwrap()[0] - k.column_oracle(p, q).unwrap()).abs() <= 1e-10 * (1.0 + direct.abs()));
    }

    #[test]
    fn random_pairs_satisfy_theorem1(
        n in 2usize..=3,
        coeffs in prop::collection::vec(-1.0f64..1.0, 6),
        seed in 0u64..1000,
    ) {
        let f = random_pair(n, &coeffs);
        let opts = VerifyOptions { oracle_nodes: 16, seed, n_max: 3 };
        for k in 0..=n {
            let r = run_check(Check::Theorem1 { k }, &f, &opts).unwrap();
            prop_assert!(r.pass, "{r:?}");
        }
    }
}
