//! Property tests over randomized configurations: each one targets an
//! invariant that a sign slip or an off-by-one in the update rules would
//! break.

use proptest::prelude::*;

use prga::bounds::{p_alpha, PartialProduct};
use prga::dictionary::{
    make_coherent_pair, mutual_coherence, CoherentPairSpec, Sign,
};
use prga::geometry::{atomic_norm, dual_atomic_norm, witness_vector, SpanBasis};
use prga::greedy::{run_prga, PowerSchedule};
use prga::vector::DenseVector;

fn admissible_pair() -> impl Strategy<Value = (f64, f64, usize)> {
    (0.0..0.95f64, 0.05..0.45f64, 2usize..24)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    /// Constructed pairs always carry unit atoms with the requested
    /// coherence, and the first greedy pick is the dominant atom.
    #[test]
    fn constructed_pair_geometry((mu, b, n) in admissible_pair()) {
        let spec = CoherentPairSpec::new(mu, n, b).unwrap();
        let (dict, target) = make_coherent_pair(&spec).unwrap();
        for atom in dict.atoms() {
            prop_assert!((atom.norm_l2() - 1.0).abs() <= 1e-12);
        }
        prop_assert!((mutual_coherence(dict.atoms()).unwrap() - mu).abs() <= 1e-12);

        let schedule = PowerSchedule::new(1.5).unwrap();
        let trace = run_prga(&dict, &target, &schedule, 1).unwrap();
        prop_assert_eq!(trace.rows[0].selected.index, 0);
        prop_assert_eq!(trace.rows[0].selected.sign, Sign::Plus);
        // Projection coefficient (1-b) + b mu and residual b sqrt(1 - mu^2).
        prop_assert!((trace.rows[0].lambda - ((1.0 - b) + b * mu)).abs() < 1e-12);
        let expected_residual = b * (1.0 - mu * mu).sqrt();
        prop_assert!((trace.rows[0].residual_l2 - expected_residual).abs() < 1e-12);
    }

    /// The deficit-product and stagnation inequalities hold along random
    /// short traces for any positive exponent.
    #[test]
    fn trace_inequalities_hold(
        (mu, b, n) in admissible_pair(),
        alpha in 0.3..2.5f64,
    ) {
        let spec = CoherentPairSpec::new(mu, n, b).unwrap();
        let (dict, target) = make_coherent_pair(&spec).unwrap();
        let schedule = PowerSchedule::new(alpha).unwrap();
        let trace = run_prga(&dict, &target, &schedule, 60).unwrap();

        let prefactor = b * (1.0 - mu) * ((1.0 + mu) / 2.0).sqrt();
        let mut product = PartialProduct::new(alpha).unwrap();
        for row in &trace.rows {
            if row.m >= 2 {
                product.push_next();
            }
            let deficit = 1.0 - row.f_atomic.unwrap();
            prop_assert!(
                deficit >= b * (1.0 - mu) * product.value() - 1e-10,
                "deficit-product fails at m = {}", row.m
            );
            prop_assert!(
                row.residual_l2 >= prefactor * product.value() - 1e-10,
                "stagnation floor fails at m = {}", row.m
            );
        }
    }

    /// Witness pairing: the normalized atom bisector pairs identically with
    /// both atoms at sqrt((1+mu)/2), which is also its dual norm.
    #[test]
    fn witness_vector_pairing(mu in 0.0..0.95f64, n in 2usize..16) {
        let spec = CoherentPairSpec::new(mu, n, 0.25).unwrap();
        let (dict, _) = make_coherent_pair(&spec).unwrap();
        let v = witness_vector(&dict).unwrap();
        let expected = ((1.0 + mu) / 2.0).sqrt();
        prop_assert!((v.norm_l2() - 1.0).abs() < 1e-12);
        prop_assert!((dual_atomic_norm(&v, &dict).unwrap() - expected).abs() < 1e-12);
    }

    /// Atomic norm is absolutely homogeneous on random span vectors.
    #[test]
    fn atomic_norm_homogeneity(
        mu in 0.0..0.9f64,
        c1 in -2.0..2.0f64,
        c2 in -2.0..2.0f64,
        t in -3.0..3.0f64,
    ) {
        let spec = CoherentPairSpec::new(mu, 6, 0.25).unwrap();
        let (dict, _) = make_coherent_pair(&spec).unwrap();
        let basis = SpanBasis::from_dictionary(&dict).unwrap();
        let u = dict.atoms()[0].scale(c1).add(&dict.atoms()[1].scale(c2));
        let norm = atomic_norm(&u, &basis).unwrap();
        let scaled = atomic_norm(&u.scale(t), &basis).unwrap();
        prop_assert!((scaled - t.abs() * norm).abs() < 1e-9 * (1.0 + norm));
    }

    /// The certified product always lands strictly inside (0, 1) with its
    /// certificate at or below the requested tolerance, and every partial
    /// product stays above it.
    #[test]
    fn certified_product_brackets(alpha in 1.05..4.0f64) {
        let result = p_alpha(alpha, 1e-10).unwrap();
        prop_assert!(result.value > 0.0 && result.value < 1.0);
        prop_assert!(result.tail_bound <= 1e-10);
        let mut partial = PartialProduct::new(alpha).unwrap();
        for _ in 2..=300u64 {
            prop_assert!(partial.push_next() > result.value);
        }
    }

    /// Duality pairing on random span vectors against random probes.
    #[test]
    fn duality_pairing(
        mu in 0.0..0.9f64,
        c1 in -2.0..2.0f64,
        c2 in -2.0..2.0f64,
        probe in proptest::collection::vec(-1.0..1.0f64, 6),
    ) {
        let spec = CoherentPairSpec::new(mu, 6, 0.25).unwrap();
        let (dict, _) = make_coherent_pair(&spec).unwrap();
        let basis = SpanBasis::from_dictionary(&dict).unwrap();
        let u = dict.atoms()[0].scale(c1).add(&dict.atoms()[1].scale(c2));
        let v = DenseVector::new(probe).unwrap();
        let pairing = u.dot(&v);
        let bound = atomic_norm(&u, &basis).unwrap() * dual_atomic_norm(&v, &dict).unwrap();
        prop_assert!(pairing <= bound + 1e-10);
    }
}
