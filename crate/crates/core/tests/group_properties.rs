use std::collections::BTreeSet;

use proptest::prelude::*;
use symqm::group::invariant_measure;
use symqm::parameters::{is_natural_exact, maximal_natural_subgroup, Naturalness};
use symqm::{FocusParameter, GroupAction, Rational};

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle()
}

fn action_strategy() -> impl Strategy<Value = GroupAction> {
    (2usize..6)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(permutation(n), 1..3)))
        .prop_map(|(n, gens)| GroupAction::from_permutations(n, &gens).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn action_is_a_right_action(action in action_strategy()) {
        let g = action.group();
        for p in 0..action.num_points() {
            prop_assert_eq!(action.act(p, g.identity()), p);
            for a in 0..g.order() {
                for b in 0..g.order() {
                    prop_assert_eq!(action.act(action.act(p, a), b), action.act(p, g.compose(a, b)));
                }
            }
        }
    }

    #[test]
    fn orbits_partition_the_points(action in action_strategy()) {
        let orbits = action.orbits();
        let mut seen = BTreeSet::new();
        for o in &orbits {
            prop_assert_eq!(o.representative, o.members[0]);
            for &p in &o.members {
                prop_assert!(seen.insert(p));
                for g in 0..action.group().order() {
                    prop_assert!(o.members.contains(&action.act(p, g)));
                }
            }
        }
        prop_assert_eq!(seen.len(), action.num_points());
    }

    #[test]
    fn rational_invariant_measure(action in action_strategy(), w in 1i64..9) {
        let k = action.orbits().len();
        let weights: Vec<Rational> = (0..k).map(|i| Rational::new(w + i as i64, 3)).collect();
        let m = invariant_measure(&action, &weights).unwrap();
        prop_assert!(m.is_invariant(&action));
        let total: Rational = m.weights.iter().cloned().sum();
        prop_assert_eq!(total, weights.iter().cloned().sum::<Rational>());
    }

    /// The maximal natural subgroup is a subgroup, every element of it passes the
    /// brute-force partition test, and every element outside fails it.
    #[test]
    fn maximal_natural_subgroup_matches_brute_force(
        action in action_strategy(),
        labels in prop::collection::vec(0u8..3, 6),
    ) {
        let n = action.num_points();
        let theta = FocusParameter::new("theta", labels[..n].to_vec());
        let g = maximal_natural_subgroup(&theta, &action).unwrap();
        prop_assert!(action.group().is_subgroup(&g));
        for e in 0..action.group().order() {
            let preserves = (0..n).all(|p| (0..n).all(|q| {
                theta.values()[p] != theta.values()[q]
                    || theta.values()[action.act(p, e)] == theta.values()[action.act(q, e)]
            }));
            prop_assert_eq!(preserves, g.contains(&e));
        }
        prop_assert_eq!(is_natural_exact(&theta, &g, &action).unwrap(), Naturalness::Natural);
    }
}
