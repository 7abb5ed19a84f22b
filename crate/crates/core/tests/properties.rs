//! Property tests over random inputs: exact group identities, involutions,
//! and oracle agreement.

use proptest::prelude::*;

use num_traits::Zero;

use quintorb_core::decision::{beta3_power, check_cde_relation, derive_mt, reconstruct_from_cde};
use quintorb_core::exchange::ExchangeMatrix;
use quintorb_core::markov::{brute_force_triples, descend_to_root, enumerate_tree};
use quintorb_core::{phi, project_word, Int, Letter, Quintuple, Rat, Triple, Word};

fn rat_strategy() -> impl Strategy<Value = Rat> {
    (1i64..=12, 1i64..=12).prop_map(|(n, d)| Rat::new(Int::from(n), Int::from(d)))
}

fn quintuple_strategy() -> impl Strategy<Value = Quintuple<Rat>> {
    [
        rat_strategy(),
        rat_strategy(),
        rat_strategy(),
        rat_strategy(),
        rat_strategy(),
    ]
    .prop_map(Quintuple::from_array)
}

fn letter_strategy() -> impl Strategy<Value = Letter> {
    prop::sample::select(Letter::ALL.to_vec())
}

fn word_strategy(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(letter_strategy(), 0..=max_len).prop_map(Word)
}

proptest! {
    #[test]
    fn t_is_invariant_and_phi_commutes(p in quintuple_strategy(), w in word_strategy(10)) {
        let q = p.apply_word(&w);
        prop_assert_eq!(q.invariant_t(), p.invariant_t());
        prop_assert_eq!(phi(&q), phi(&p).apply_word(&project_word(&w)));
        prop_assert_eq!(p.apply_word(&w.inverse()).apply_word(&w), p.clone());
        prop_assert_eq!(q.invariant_t(), phi(&q).tilde_t());
    }

    #[test]
    fn words_roundtrip_through_text(w in word_strategy(20)) {
        let text = w.to_string();
        prop_assert_eq!(text.parse::<Word>().unwrap(), w);
    }

    #[test]
    fn matrix_mutation_is_involutive(rows in prop::collection::vec(
        prop::collection::vec(-4i64..=4, 4), 5)) {
        let m = ExchangeMatrix::new(
            rows.into_iter()
                .map(|r| r.into_iter().map(Int::from).collect())
                .collect(),
        )
        .unwrap();
        for k in 1..=4 {
            prop_assert_eq!(m.mutate(k).unwrap().mutate(k).unwrap(), m.clone());
        }
    }

    #[test]
    fn mutation_preserves_the_symmetrizer(seed in -3i64..=3) {
        // skew-symmetric 4x4 built from one parameter, extended by a frozen row
        let b = ExchangeMatrix::new(vec![
            vec![Int::from(0), Int::from(seed), Int::from(1), Int::from(-1)],
            vec![Int::from(-seed), Int::from(0), Int::from(2), Int::from(0)],
            vec![Int::from(-1), Int::from(-2), Int::from(0), Int::from(seed)],
            vec![Int::from(1), Int::from(0), Int::from(-seed), Int::from(0)],
            vec![Int::from(1), Int::from(1), Int::from(0), Int::from(-1)],
        ])
        .unwrap();
        let d = b.principal_symmetrizer();
        prop_assert!(d.is_some());
        for k in 1..=4 {
            prop_assert_eq!(b.mutate(k).unwrap().principal_symmetrizer(), d.clone());
        }
    }

    #[test]
    fn cde_relation_and_reconstruction(p in quintuple_strategy()) {
        prop_assert!(check_cde_relation(&p));
        prop_assert!(derive_mt(&phi(&p)).m > Rat::new(Int::from(0), Int::from(1)));
        let triple = phi(&p);
        prop_assert_eq!(reconstruct_from_cde(&p.c, &p.d, &p.e, &triple).unwrap(), p.clone());
    }

    #[test]
    fn beta_cubed_matches_words(p in quintuple_strategy(), n in -8i64..=8) {
        let letter = if n >= 0 { Letter::Beta } else { Letter::BetaInv };
        let word = Word(vec![letter; 3 * n.unsigned_abs() as usize]);
        prop_assert_eq!(beta3_power(&p, n), p.apply_word(&word));
    }

    #[test]
    fn descent_replays_on_random_tree_walks(steps in prop::collection::vec(0usize..3, 0..8)) {
        // walk the solution tree by Vieta branches, then descend back
        let mut t = Triple::from_array([3, 4, 4].map(Int::from));
        for s in steps {
            let Triple { x, y, z } = t.clone();
            let branch = match s {
                0 => Triple::new(y.clone() * z.clone() - x, y, z),
                1 => Triple::new(x.clone(), x.clone() * z.clone() - y, z),
                _ => Triple::new(x.clone(), y.clone(), x * y - z),
            };
            t = branch;
        }
        prop_assert!(t.tilde_t().is_zero());
        let w = descend_to_root(&t).unwrap();
        prop_assert_eq!(Triple::from_array([3, 4, 4].map(Int::from)).apply_word(&w), t);
    }

    #[test]
    fn tree_equals_oracle_at_random_bounds(bound in 4i64..=400) {
        prop_assert_eq!(enumerate_tree(&bound), brute_force_triples(&bound));
    }
}
