use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use syncorr::classical::{two_input_decompose, DEFAULT_FUNCTION_CAP};
use syncorr::io::{correlation_from_json, correlation_to_json, distribution_from_json, distribution_to_json};
use syncorr::polytope::ns_vertex_classification;
use syncorr::sampling::{random_function_mixture, random_symmetric_two_input, ViolatingSampler};
use syncorr::{classical_membership, ClassicalCertificate, Correlation, GameShape, Rational};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn game() -> impl Strategy<Value = GameShape> {
    prop_oneof![Just((1, 2)), Just((2, 2)), Just((3, 2)), Just((2, 3)), Just((1, 4))].prop_map(|(n, m)| GameShape::new(n, m).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn mixtures_satisfy_all_predicates(seed: u64, s in game(), k in 1usize..=5) {
        let p = random_function_mixture(s, k, &mut rng(seed)).correlation();
        prop_assert!(p.is_synchronous(0.0));
        prop_assert!(p.is_nonsignaling(0.0));
        prop_assert!(p.is_symmetric(0.0));
        let sums: Vec<Rational> = (0..s.cols()).map(|c| (0..s.rows()).map(|r| p.entries()[r * s.cols() + c].clone()).sum()).collect();
        prop_assert!(sums.iter().all(|v| *v == Rational::from_integer(1.into())));
    }

    #[test]
    fn float_membership_agrees_with_exact(seed: u64, s in game(), k in 1usize..=5) {
        let p = random_function_mixture(s, k, &mut rng(seed)).correlation();
        let exact = classical_membership(&p, DEFAULT_FUNCTION_CAP, 0.0).unwrap();
        let float = classical_membership(&p.to_float(), DEFAULT_FUNCTION_CAP, 1e-9).unwrap();
        prop_assert!(exact.is_classical() && float.is_classical());
        if let ClassicalCertificate::Classical(mu) = float {
            prop_assert!(mu.correlation().max_abs_diff(&p.to_float()) <= 1e-9);
        }
    }

    #[test]
    fn violating_points_rejected_in_both_modes(seed: u64) {
        let sampler = ViolatingSampler::new(ns_vertex_classification());
        let p = sampler.sample(&mut rng(seed));
        let exact = classical_membership(&p, DEFAULT_FUNCTION_CAP, 0.0).unwrap();
        let float = classical_membership(&p.to_float(), DEFAULT_FUNCTION_CAP, 1e-9).unwrap();
        prop_assert!(!exact.is_classical() && !float.is_classical());
        if let ClassicalCertificate::NotClassical(g) = exact {
            prop_assert!(g.evaluate(&p) > g.bound);
        }
    }

    #[test]
    fn two_input_agrees_with_simplex(seed: u64, m in 2usize..=4) {
        let p = random_symmetric_two_input(m, &mut rng(seed));
        let mu = two_input_decompose(&p, 0.0).unwrap();
        prop_assert_eq!(&mu.correlation(), &p);
        prop_assert!(classical_membership(&p, DEFAULT_FUNCTION_CAP, 0.0).unwrap().is_classical());
    }

    #[test]
    fn json_round_trips(seed: u64, s in game(), k in 1usize..=5) {
        let mu = random_function_mixture(s, k, &mut rng(seed));
        let p = mu.correlation();
        let text = correlation_to_json(&p);
        let back: Correlation<Rational> = correlation_from_json(&text, 0.0).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(correlation_to_json(&back), text);

        let fp = p.to_float();
        let fback: Correlation<f64> = correlation_from_json(&correlation_to_json(&fp), 1e-9).unwrap();
        // Float reads renormalize columns, so only ulp-level drift is allowed.
        prop_assert!(fback.max_abs_diff(&fp) <= 1e-15);

        let dback = distribution_from_json::<Rational>(&distribution_to_json(&mu)).unwrap();
        prop_assert_eq!(dback, mu);
    }
}
