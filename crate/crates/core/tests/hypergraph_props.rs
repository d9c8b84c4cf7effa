use itertools::Itertools;
use proptest::prelude::*;

use helly_core::hypergraph::{
    greedy_maximal_matching, greedy_maximal_matching_with_order, independence_number_exact,
    matching_number_exact, uncovered_vertices,
};
use helly_core::Hypergraph;

/// Random r-uniform hypergraph: each possible edge kept independently.
fn hypergraph() -> impl Strategy<Value = Hypergraph> {
    (2usize..=3, 1usize..=12).prop_flat_map(|(r, n)| {
        let all: Vec<Vec<usize>> = (0..n).combinations(r).collect();
        let len = all.len();
        (Just((n, r, all)), proptest::collection::vec(any::<bool>(), len)).prop_map(
            |((n, r, all), keep)| {
                let edges = all.into_iter().zip(keep).filter_map(|(e, k)| k.then_some(e));
                Hypergraph::new(n, r, edges).unwrap()
            },
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn uncovered_set_of_maximal_matching_is_independent(h in hypergraph(), rot in 0usize..64) {
        let m = greedy_maximal_matching(&h);
        prop_assert!(m.is_matching_of(&h) && m.is_maximal_in(&h));
        let u = uncovered_vertices(&h, &m).unwrap();
        prop_assert!(h.is_independent(&u));

        // Any scan order gives another maximal matching with the same property.
        let k = h.edges().len();
        let order: Vec<usize> = (0..k).map(|i| (i + rot) % k.max(1)).collect();
        let m2 = greedy_maximal_matching_with_order(&h, &order).unwrap();
        prop_assert!(m2.is_maximal_in(&h));
        prop_assert!(h.is_independent(&uncovered_vertices(&h, &m2).unwrap()));
    }

    #[test]
    fn uncovered_count_is_at_most_independence_number(h in hypergraph()) {
        let m = greedy_maximal_matching(&h);
        let alpha = independence_number_exact(&h).unwrap();
        prop_assert!(h.n() - h.r() * m.len() <= alpha);
        let nu = matching_number_exact(&h).unwrap();
        prop_assert!(m.len() <= nu);
        prop_assert!(h.n() - h.r() * nu <= alpha);
    }

    #[test]
    fn exact_numbers_match_subset_enumeration(h in hypergraph()) {
        let n = h.n();
        let alpha = (0u32..1 << n)
            .filter(|s| {
                let vs: Vec<usize> = (0..n).filter(|v| s & (1 << v) != 0).collect();
                h.is_independent(&vs)
            })
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap();
        prop_assert_eq!(independence_number_exact(&h).unwrap(), alpha);
    }
}
