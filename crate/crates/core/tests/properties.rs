use num_complex::Complex64;
use positivity::quadrant::random_pr_system;
use positivity::{
    check_external_positivity, construct_negativity_witness, is_positive_real, markov_parameters,
    zoh_discretize, EpStatus, StateSpace, TransferFunction,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn tf(num: &[f64], den: &[f64]) -> TransferFunction {
    TransferFunction::from_coeffs(num, den).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    // (ds+b)/(s+a) has impulse response dδ + (b - da)e^{-at}
    #[test]
    fn biproper_first_order_ep_matches_closed_form(
        d in 0.1f64..5.0, b in 0.1f64..5.0, a in 0.1f64..5.0,
    ) {
        prop_assume!((b - d * a).abs() > 1e-3);
        let f = tf(&[d, b], &[1.0, a]);
        prop_assert!(is_positive_real(&f).verdict);
        let v = check_external_positivity(&f).unwrap();
        let expected = if b >= d * a { EpStatus::Positive } else { EpStatus::Negative };
        prop_assert_eq!(v.status, expected);
        if expected == EpStatus::Negative {
            let w = construct_negativity_witness(&f).unwrap();
            prop_assert!(w.output_value < 0.0);
        }
    }

    // K e^{-at} stays nonnegative whatever the sign of a
    #[test]
    fn first_order_is_ep_for_any_pole(k in 0.1f64..10.0, a in -3.0f64..3.0) {
        prop_assume!(a.abs() > 1e-6);
        let f = tf(&[k], &[1.0, a]);
        prop_assert_eq!(check_external_positivity(&f).unwrap().status, EpStatus::Positive);
        prop_assert_eq!(is_positive_real(&f).verdict, a > 0.0);
    }

    #[test]
    fn decomposition_recombines(d in -3.0f64..3.0, b in -3.0f64..3.0, a in -3.0f64..3.0, w in -5.0f64..5.0) {
        prop_assume!((b - d * a).abs() > 1e-6);
        let f = tf(&[d, b], &[1.0, a]);
        let dec = f.decompose_biproper().unwrap();
        prop_assert!((dec.d - d).abs() < 1e-12);
        let s = Complex64::new(0.3, w);
        prop_assert!((dec.recombine().eval(s) - f.eval(s)).norm() < 1e-9 * (1.0 + f.eval(s).norm()));
    }

    #[test]
    fn inverse_of_random_pr_system_is_pr(seed in any::<u64>()) {
        let f = random_pr_system(&mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert!(is_positive_real(&f).verdict);
        prop_assert!(is_positive_real(&f.inverse().unwrap()).verdict);
    }

    // sampling preserves nonnegativity of the impulse response
    #[test]
    fn zoh_keeps_markov_parameters_nonnegative(
        p1 in 0.1f64..3.0, p2 in 0.1f64..3.0, h in 0.01f64..1.0,
    ) {
        let f = tf(&[1.0], &[1.0, p1 + p2, p1 * p2]);
        prop_assert_eq!(check_external_positivity(&f).unwrap().status, EpStatus::Positive);
        let dss = zoh_discretize(&StateSpace::from_tf(&f).unwrap(), h).unwrap();
        let g = markov_parameters(&dss, 100);
        prop_assert!(g.iter().all(|&x| x >= -1e-12));
    }
}
