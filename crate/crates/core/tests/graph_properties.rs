mod common;

use netrel::ensemble::{fold_edge_sets, EnsembleParams, EnumerationOptions};
use netrel::exactmath::choose_u64;
use netrel::graphcore::{
    cut_weight_distribution, cutset_oracle, f2_rank, incidence_matrix, io_weight_table, null_space_size, pair_count,
};
use netrel::reliability::{eval_failure, failure_profile_enum, failure_profile_pivotal};
use netrel::{EpsPolynomial, LabeledGraph, Rational};
use num_bigint::BigUint;
use proptest::prelude::*;

fn graph_strategy(max_k: usize) -> impl Strategy<Value = LabeledGraph> {
    (2..=max_k).prop_flat_map(|k| {
        prop::collection::vec(any::<bool>(), pair_count(k)).prop_filter_map("needs an edge", move |keep| {
            let pairs: Vec<_> = common::pairs(k)
                .into_iter()
                .zip(keep)
                .filter(|(_, on)| *on)
                .map(|(p, _)| p)
                .collect();
            LabeledGraph::new(k, pairs).ok()
        })
    })
}

#[test]
fn connectivity_agrees_with_rank_exhaustively() {
    let mut shapes: Vec<(usize, usize)> = Vec::new();
    for k in 2..=6 {
        shapes.extend((1..=pair_count(k)).map(|n| (k, n)));
    }
    shapes.extend([(7, 1), (7, 2), (7, 3), (7, 6), (7, 7), (8, 1), (8, 2), (8, 3), (8, 7)]);
    for (k, n) in shapes {
        let p = EnsembleParams::new(k, n).unwrap();
        let mismatches: u64 = fold_edge_sets(p, &EnumerationOptions::default(), || 0u64, |acc, g| {
            let by_rank = f2_rank(&incidence_matrix(g)) == k - 1;
            if by_rank != g.is_connected() {
                *acc += 1;
            }
        })
        .unwrap()
        .into_iter()
        .sum();
        assert_eq!(mismatches, 0, "k = {k}, n = {n}");
    }
}

#[test]
fn cut_distribution_matches_oracle_on_random_graphs() {
    let mut rng = common::rng(11);
    for _ in 0..300 {
        let g = common::random_connected(&mut rng, 2, 10, 20);
        assert_eq!(cut_weight_distribution(&g).unwrap(), cutset_oracle(&g).unwrap(), "{g}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn weight_table_symmetry_and_total(g in graph_strategy(8)) {
        let t = io_weight_table(&g).unwrap();
        let k = g.vertex_count();
        prop_assert_eq!(t.total(), 1u64 << k);
        for u in 0..=k {
            for v in 0..=g.edge_count() {
                prop_assert_eq!(t.get(u, v), t.get(k - u, v));
            }
        }
    }

    #[test]
    fn connected_graphs_have_full_cut_space(g in graph_strategy(8)) {
        let k = g.vertex_count();
        prop_assert_eq!(null_space_size(&g) == BigUint::from(2u32), g.is_connected());
        if g.is_connected() {
            let b = cut_weight_distribution(&g).unwrap();
            prop_assert_eq!(b.counts[0], 1);
            prop_assert_eq!(b.total(), 1u64 << (k - 1));
        }
    }

    #[test]
    fn failure_counts_are_monotone(g in graph_strategy(6)) {
        prop_assume!(g.edge_count() <= 14);
        let profile = failure_profile_enum(&g).unwrap();
        let n = g.edge_count() as u64;
        prop_assert_eq!(profile.counts[n as usize], 1);
        prop_assert_eq!(profile.counts[0] == 1, !g.is_connected());
        for j in 0..n as usize {
            // N_j / C(n,j) ≤ N_{j+1} / C(n,j+1)
            let lhs = profile.counts[j] as u128 * choose_u64(n, j as u64 + 1) as u128;
            let rhs = profile.counts[j + 1] as u128 * choose_u64(n, j as u64) as u128;
            prop_assert!(lhs <= rhs, "j = {}", j);
        }
    }
}

#[test]
fn pivotal_equals_enumeration_on_random_connected_graphs() {
    let mut rng = common::rng(2024);
    for _ in 0..500 {
        let g = common::random_connected(&mut rng, 2, 6, 10);
        assert_eq!(failure_profile_pivotal(&g), failure_profile_enum(&g).unwrap().polynomial, "{g}");
    }
}

#[test]
fn pivotal_handles_unconnected_random_graphs() {
    let mut rng = common::rng(5);
    let mut seen = 0;
    while seen < 50 {
        let g = common::random_graph(&mut rng, 6, 5);
        if g.is_connected() {
            continue;
        }
        seen += 1;
        assert_eq!(failure_profile_pivotal(&g), EpsPolynomial::one());
        assert_eq!(failure_profile_enum(&g).unwrap().polynomial, EpsPolynomial::one());
    }
}

#[test]
fn cut_set_bounds_sandwich_each_graph() {
    let mut rng = common::rng(77);
    for _ in 0..200 {
        let g = common::random_connected(&mut rng, 3, 7, 12);
        let n = g.edge_count();
        let b = cut_weight_distribution(&g).unwrap();
        let profile = failure_profile_enum(&g).unwrap();
        for eps in [Rational::ratio(1, 10), Rational::ratio(1, 100)] {
            let pf = profile.polynomial.eval(&eps);
            let keep = Rational::one() - eps.clone();
            let upper: Rational = (1..=n).map(|v| Rational::from_integer(b.counts[v]) * eps.pow(v as u32)).sum();
            let lower: Rational = (1..=n)
                .map(|v| Rational::from_integer(b.counts[v]) * eps.pow(v as u32) * keep.pow((n - v) as u32))
                .sum();
            assert!(pf <= upper, "{g} at {eps}");
            assert!(pf >= lower, "{g} at {eps}");
        }
    }
}

#[test]
fn failure_probability_is_nondecreasing_in_eps() {
    let mut rng = common::rng(3);
    let grid: Vec<Rational> = (0..100).map(|i| Rational::ratio(i, 99)).collect();
    for _ in 0..40 {
        let g = common::random_connected(&mut rng, 2, 6, 10);
        let values: Vec<Rational> = grid.iter().map(|x| eval_failure(&g, x).unwrap().value).collect();
        assert!(values.windows(2).all(|w| w[0] <= w[1]), "{g}");
        assert!(values[0].is_zero());
        assert_eq!(values[99], Rational::one());
    }
}

#[test]
fn four_vertex_star_cuts() {
    let star = LabeledGraph::from_one_based(4, &[(1, 2), (1, 3), (1, 4)]).unwrap();
    assert_eq!(cutset_oracle(&star).unwrap().counts, [1, 3, 3, 1]);
}
