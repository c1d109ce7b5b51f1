mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use seqlogic::{NumerationSystem, Session};

#[test]
fn arithmetic_recognizers_up_to_5000() {
    for system in common::SYSTEMS {
        common::arithmetic_exhaustive(system, 5000).unwrap();
    }
}

#[test]
fn arithmetic_recognizers_small_bounds() {
    for system in common::SYSTEMS {
        for bound in [0, 1, 2, 7, 30] {
            common::arithmetic_exhaustive(system, bound).unwrap();
        }
    }
}

#[test]
fn automata_algebra() {
    common::automata_suite(11, 40).unwrap();
}

#[test]
fn formulas() {
    common::formula_suite(12, 40).unwrap();
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn boolean_ops_match_pointwise(seed in any::<u64>(), shape in 0usize..4) {
        let shapes: [&[u32]; 4] = [&[2], &[3], &[4], &[2, 2]];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = common::random_dfa(&mut rng, shapes[shape], 5);
        let b = common::random_dfa(&mut rng, shapes[shape], 5);
        prop_assert_eq!(common::check_boolean(&a, &b, 6), Ok(()));
        prop_assert_eq!(common::check_minimize(&mut rng, &a, 6), Ok(()));
    }

    #[test]
    fn projection_matches_padded_exists(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = common::random_dfa(&mut rng, &[2, 2], 3);
        prop_assert_eq!(common::check_projection(&a, 6), Ok(()));
    }

    #[test]
    fn quantifier_duality(seed in any::<u64>(), sys in 0usize..3) {
        let systems = [NumerationSystem::Msd(2), NumerationSystem::Lsd(3), NumerationSystem::MsdFib];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = common::Formula::random(&mut rng, 2);
        let mut session = Session::new();
        prop_assert_eq!(common::check_formula(&mut session, systems[sys], &f), Ok(()));
    }
}

#[test]
fn corrupted_adder_is_caught() {
    for system in [NumerationSystem::Msd(2), NumerationSystem::Lsd(3), NumerationSystem::MsdFib] {
        let add = system.add_dfa();
        let nsym = add.alphabet().len();
        for q in 0..add.states() {
            for s in 0..nsym {
                let mut delta: Vec<u32> = (0..add.states() * nsym)
                    .map(|i| add.step(i / nsym, i % nsym) as u32)
                    .collect();
                let old = delta[q * nsym + s];
                delta[q * nsym + s] = (old + 1) % add.states() as u32;
                let bad = seqlogic::Dfa::new(add.alphabet().clone(), delta, add.accepting().to_vec())
                    .unwrap();
                if bad.and(&system.valid_dfa(3)).unwrap() != add {
                    assert!(common::check_adder(&bad, system, 200).is_err(), "{} {q} {s}", system.tag());
                }
            }
        }
    }
}
