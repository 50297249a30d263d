use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toeplitz_core::equivalence::{
    compose_quasifree_witness, decide_bh_quasifree, direct_sum_witness, invert_quasifree_witness, verify_quasifree, BhDecision,
    QuasifreeWitness,
};
use toeplitz_core::rep::Split;
use toeplitz_core::wold::multiplicity;
use toeplitz_core::{direct_sum, random, Representation};

const DEPTH: usize = 3;

fn witness(omega: &Representation, tau: &Representation) -> QuasifreeWitness {
    match decide_bh_quasifree(omega, tau).unwrap() {
        BhDecision::Equivalent(q) => q,
        other => panic!("expected equivalence, got {other:?}"),
    }
}

fn twisted_like(rng: &mut ChaCha8Rng, model: &Representation, m: usize) -> Representation {
    let base = random::with_multiplicity(rng, model.n(), m).untwisted();
    match model.twist() {
        Some(t) => base.with_twist(t.clone()).unwrap(),
        None => base,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn inverse_and_composite_reverify(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(2..=3);
        let m = rng.gen_range(0..=2);
        let omega = random::with_multiplicity(&mut rng, n, m);
        let tau = random::with_multiplicity(&mut rng, n, m);
        let kappa = random::with_multiplicity(&mut rng, n, m);
        let q1 = witness(&omega, &tau);
        let q2 = witness(&tau, &kappa);
        prop_assert!(verify_quasifree(&omega, &tau, &q1, DEPTH).unwrap().passed());
        prop_assert!(verify_quasifree(&tau, &kappa, &q2, DEPTH).unwrap().passed());
        let inv = invert_quasifree_witness(&q1).unwrap();
        prop_assert!(verify_quasifree(&tau, &omega, &inv, DEPTH).unwrap().passed());
        let comp = compose_quasifree_witness(&q1, &q2).unwrap();
        prop_assert!(verify_quasifree(&omega, &kappa, &comp, DEPTH).unwrap().passed());
    }

    #[test]
    fn direct_sums_reverify(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 2;
        let (m1, m2) = (rng.gen_range(0..=1), rng.gen_range(0..=1));
        let omega1 = random::with_multiplicity(&mut rng, n, m1);
        let omega2 = twisted_like(&mut rng, &omega1, m2);
        let tau1 = random::with_multiplicity(&mut rng, n, m1);
        let tau2 = twisted_like(&mut rng, &tau1, m2);
        let (q1, q2) = (witness(&omega1, &tau1), witness(&omega2, &tau2));
        let omega = direct_sum(&omega1, &omega2).unwrap();
        let tau = direct_sum(&tau1, &tau2).unwrap();
        let split_t = Split::new(tau1.layout().clone(), tau2.layout().clone()).unwrap();
        let split_o = Split::new(omega1.layout().clone(), omega2.layout().clone()).unwrap();
        let q = direct_sum_witness(&q1, &q2, &split_t, &split_o).unwrap();
        prop_assert!(verify_quasifree(&omega, &tau, &q, DEPTH).unwrap().passed());
        prop_assert_eq!(multiplicity(&omega), multiplicity(&tau));
    }
}
