//! Printing, parsing and normal forms of random formulas.

mod common;

use common::*;
use ffqe::logic::parse;
use ffqe::oracle::equivalent;
use ffqe::FieldSpec;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small_q() -> impl Strategy<Value = u64> {
    prop_oneof![Just(2u64), Just(3), Just(4), Just(5), Just(9)]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, ..ProptestConfig::default() })]

    #[test]
    fn print_parse_round_trip(q in small_q(), seed in any::<u64>()) {
        let field = FieldSpec::of_order(q).unwrap();
        let phi = random_formula(&mut ChaCha8Rng::seed_from_u64(seed), &field);
        let again = parse(&phi.to_string(), &field).unwrap();
        prop_assert_eq!(again.to_string(), phi.to_string());
        prop_assert!(equivalent(&again, &phi, &field).unwrap());
    }

    #[test]
    fn nnf_preserves_realization(q in small_q(), seed in any::<u64>()) {
        let field = FieldSpec::of_order(q).unwrap();
        let phi = random_formula(&mut ChaCha8Rng::seed_from_u64(seed), &field);
        let nnf = phi.to_nnf();
        prop_assert!(nnf.is_nnf());
        prop_assert!(equivalent(&nnf, &phi, &field).unwrap());
    }

    #[test]
    fn prenex_preserves_realization(q in small_q(), seed in any::<u64>()) {
        let field = FieldSpec::of_order(q).unwrap();
        let phi = random_formula(&mut ChaCha8Rng::seed_from_u64(seed), &field);
        let prenex = phi.to_prenex();
        prop_assert!(prenex.is_well_formed());
        prop_assert!(prenex.matrix.is_quantifier_free());
        prop_assert!(equivalent(&prenex.to_formula(), &phi, &field).unwrap());
    }
}
