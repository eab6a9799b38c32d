use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use stylemeter::stats::{holm_bonferroni, mann_whitney_u};

mod common;
use common::enumerated_p;

#[derive(Deserialize)]
struct Fixture {
    cases: Vec<Case>,
}

#[derive(Deserialize)]
struct Case {
    method: String,
    x: Vec<f64>,
    y: Vec<f64>,
    u: f64,
    p: f64,
}

#[test]
fn matches_scipy() {
    let fixture: Fixture = serde_json::from_str(include_str!("fixtures/mwu_scipy.json")).unwrap();
    for case in fixture.cases {
        let r = mann_whitney_u(&case.x, &case.y).unwrap();
        assert_eq!(
            r.exact,
            case.method == "exact",
            "{:?} vs {:?}",
            case.x,
            case.y
        );
        assert!((r.u - case.u).abs() < 1e-9, "U {} vs {}", r.u, case.u);
        assert!((r.p - case.p).abs() < 1e-6, "p {} vs {}", r.p, case.p);
    }
}

#[test]
fn exact_agrees_with_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    for _ in 0..1200 {
        let n1 = rng.random_range(1..=8);
        let n2 = rng.random_range(1..=8);
        if n1 + n2 > 12 && rng.random_bool(0.7) {
            // keep the enumeration cheap on average
            continue;
        }
        let mut pool: Vec<f64> = (0..n1 + n2)
            .map(|i| i as f64 + rng.random::<f64>() * 0.5)
            .collect();
        pool.shuffle(&mut rng);
        let (x, y) = pool.split_at(n1);
        let r = mann_whitney_u(x, y).unwrap();
        assert!(r.exact);
        let want = enumerated_p(x, y);
        assert!((r.p - want).abs() < 1e-12, "{x:?} {y:?}: {} vs {want}", r.p);
        checked += 1;
    }
    assert!(checked >= 1000, "only {checked} cases");
}

#[test]
fn holm_worked_examples() {
    assert_eq!(holm_bonferroni(&[0.005], 0.01), vec![true]);
    assert_eq!(holm_bonferroni(&[0.01, 0.02, 0.03], 0.05), vec![true; 3]);
    assert_eq!(holm_bonferroni(&[0.04, 0.04, 0.04], 0.05), vec![false; 3]);
}

mod properties {
    use super::*;
    use proptest::prelude::*;

    fn sample() -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(
            prop_oneof![Just(0.0), 0.0f64..10.0, (0u8..5).prop_map(f64::from)],
            1..40,
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn swapping_samples_keeps_p(x in sample(), y in sample()) {
            let a = mann_whitney_u(&x, &y).unwrap();
            let b = mann_whitney_u(&y, &x).unwrap();
            prop_assert!((a.p - b.p).abs() < 1e-12);
            prop_assert!((a.u + b.u - (x.len() * y.len()) as f64).abs() < 1e-9);
            prop_assert!((0.0..=1.0).contains(&a.p));
        }

        #[test]
        fn monotone_transform_keeps_result(x in sample(), y in sample()) {
            let f = |v: &Vec<f64>| v.iter().map(|a| (a * 0.3).exp() * 2.0 + 1.0).collect::<Vec<_>>();
            let a = mann_whitney_u(&x, &y).unwrap();
            let b = mann_whitney_u(&f(&x), &f(&y)).unwrap();
            prop_assert_eq!(a.u, b.u);
            prop_assert!((a.p - b.p).abs() < 1e-12);
        }

        #[test]
        fn self_comparison_is_never_significant(x in sample()) {
            prop_assert!(mann_whitney_u(&x, &x).unwrap().p > 0.5);
        }

        #[test]
        fn holm_sits_between_bonferroni_and_raw(p in prop::collection::vec(0.0f64..0.2, 0..30), alpha in 0.001f64..0.2) {
            let holm = holm_bonferroni(&p, alpha);
            let m = p.len() as f64;
            for (pi, h) in p.iter().zip(&holm) {
                if *pi <= alpha / m {
                    prop_assert!(*h);
                }
                if *h {
                    prop_assert!(*pi <= alpha);
                }
            }
            // a rejected p-value implies every smaller one is rejected
            for (i, &hi) in holm.iter().enumerate() {
                for (j, &hj) in holm.iter().enumerate() {
                    if hi && p[j] < p[i] {
                        prop_assert!(hj, "{} rejected but {} not", p[i], p[j]);
                    }
                }
            }
        }

        #[test]
        fn holm_grows_with_alpha(p in prop::collection::vec(0.0f64..0.2, 0..30), a in 0.001f64..0.1) {
            let lo = holm_bonferroni(&p, a);
            let hi = holm_bonferroni(&p, a * 2.0);
            for (l, h) in lo.iter().zip(&hi) {
                prop_assert!(!l | h);
            }
        }
    }
}
