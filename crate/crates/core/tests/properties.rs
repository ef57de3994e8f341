//! Algebraic properties of the pipeline over small fields, checked against
//! brute-force enumeration.

mod common;

use common::*;
use ffqe::poly::Reducer;
use ffqe::{FieldSpec, Ring};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn config() -> ProptestConfig {
    ProptestConfig { cases: 256, ..ProptestConfig::default() }
}

fn small_q() -> impl Strategy<Value = u64> {
    prop_oneof![Just(2u64), Just(3), Just(4)]
}

fn setup(q: u64, n: usize) -> Ring {
    Ring::lex(&FieldSpec::of_order(q).unwrap(), &names(n)).unwrap()
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn membership_iff_vanishing(q in small_q(), n in 1usize..=3, k in 1usize..=3, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = setup(q, n);
        let gens: Vec<_> = (0..k).map(|_| random_poly(&mut rng, &ring, 3, 3)).collect();
        let f = if rng.gen_bool(0.5) {
            random_poly(&mut rng, &ring, 3, 3)
        } else {
            // A combination of the generators, which always vanishes.
            let a = random_poly(&mut rng, &ring, 2, 1);
            &a * &gens[0]
        };
        check_nullstellensatz(&gens, &f).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn elimination_is_projection(q in small_q(), n in 2usize..=3, k in 1usize..=3, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = setup(q, n);
        let gens: Vec<_> = (0..k).map(|_| random_poly(&mut rng, &ring, 3, 3)).collect();
        let drop = rng.gen_range(1..n);
        check_elimination_projection(&gens, drop).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn flattening_preserves_realization(q in small_q(), n in 1usize..=3, atoms in 1usize..=4, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let field = FieldSpec::of_order(q).unwrap();
        let vars = names(n);
        let psi = random_matrix(&mut rng, &field, &vars, atoms);
        check_flattening(&psi, &field, &vars).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn groebner_bases_are_reduced_and_deterministic(q in small_q(), n in 1usize..=3, k in 1usize..=3, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = setup(q, n);
        let gens: Vec<_> = (0..k).map(|_| random_poly(&mut rng, &ring, 3, 3)).collect();
        check_groebner(&mut rng, &gens).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn frobenius_fixes_quotient_classes(q in small_q(), n in 1usize..=3, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = setup(q, n);
        let g = random_poly(&mut rng, &ring, 4, 4);
        let reducer = Reducer::new(&ring);
        prop_assert_eq!(reducer.pow(&g, q as u32), reducer.reduce(&g));
    }
}

#[test]
fn fermat_little_theorem_up_to_81() {
    let mut checked = 0;
    for q in prime_powers_up_to(81) {
        checked += check_fermat(q).unwrap();
    }
    assert!(checked >= 200, "only {checked} elements checked");
}
