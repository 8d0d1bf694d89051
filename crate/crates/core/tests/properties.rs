//! Randomized properties over generated permutations and trees.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tgk_core::game::{optimal_move, winner, winner_by_phi, Winner};
use tgk_core::lattice::{enumerate_prunings, rank_generating_function_by_enumeration};
use tgk_core::poly::phi;
use tgk_core::tamari::{tamari_join, tamari_leq, tamari_meet};
use tgk_core::tree::{canonicalize, fif_of_tree, gamma, gamma_inverse, tree_from_fif};
use tgk_core::{Permutation, PlaneTree, TamariElement};

fn arb_perm(max: usize) -> impl Strategy<Value = Permutation> {
    (1..=max)
        .prop_flat_map(|n| Just((2..=n).collect::<Vec<usize>>()).prop_shuffle())
        .prop_map(|tail| {
            let mut values = vec![1];
            values.extend(tail);
            Permutation::new(values).unwrap()
        })
}

fn arb_tree(max: usize) -> impl Strategy<Value = PlaneTree> {
    (1..=max, any::<u64>())
        .prop_map(|(n, seed)| PlaneTree::random(n, &mut ChaCha8Rng::seed_from_u64(seed)))
}

proptest! {
    #[test]
    fn gamma_round_trip(p in arb_perm(14)) {
        let t = gamma(&p);
        prop_assert!(t.is_increasing());
        prop_assert_eq!(gamma_inverse(&t).unwrap(), p.clone());
        let text = t.to_string();
        prop_assert_eq!(gamma_inverse(&text.parse().unwrap()).unwrap().to_string(), p.to_string());
    }

    #[test]
    fn fif_round_trip(t in arb_tree(20)) {
        prop_assert_eq!(tree_from_fif(&fif_of_tree(&t)).unwrap(), t);
    }

    #[test]
    fn phi_properties(t in arb_tree(16)) {
        let p = phi(&t);
        prop_assert_eq!(&p, &phi(canonicalize(&t).as_plane()));
        prop_assert_eq!(p.degree(), Some(t.len() - 1));
        let w = winner_by_phi(&t).unwrap();
        prop_assert_eq!(w, winner(&t));
        if w == Winner::FirstPlayer {
            let k = optimal_move(&t).unwrap();
            prop_assert_eq!(winner(&t.subtree(t.children(0)[k - 1])), Winner::SecondPlayer);
        }
    }

    #[test]
    fn rgf_equals_phi(t in arb_tree(14)) {
        prop_assert_eq!(rank_generating_function_by_enumeration(&t).unwrap(), phi(&t));
        let prunings = enumerate_prunings(&t).unwrap();
        for w in prunings.windows(2) {
            prop_assert!(w[0].rank() <= w[1].rank());
        }
    }

    #[test]
    fn tamari_operations_are_lattice_like(a in arb_tree(9), seed in any::<u64>()) {
        let b = PlaneTree::random(a.len(), &mut ChaCha8Rng::seed_from_u64(seed));
        let (x, y) = (TamariElement::from_tree(&a), TamariElement::from_tree(&b));
        let j = tamari_join(&x, &y).unwrap();
        let m = tamari_meet(&x, &y).unwrap();
        prop_assert!(tamari_leq(&x, &j).unwrap() && tamari_leq(&y, &j).unwrap());
        prop_assert!(tamari_leq(&m, &x).unwrap() && tamari_leq(&m, &y).unwrap());
        prop_assert_eq!(tamari_join(&y, &x).unwrap(), j.clone());
        prop_assert_eq!(tamari_meet(&x, &j).unwrap(), x.clone());
        prop_assert_eq!(tamari_join(&x, &m).unwrap(), x);
    }
}
