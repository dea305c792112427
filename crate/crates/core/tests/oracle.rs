mod common;

use proptest::prelude::*;

use mink_core::enumerate::planarity::is_planar;
use mink_core::enumerate::{exact_min_k_decide, DecideOutcome};
use mink_core::Graph;

fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::new((0..n).map(|i| format!("v{i}")).collect(), edges.to_vec()).unwrap()
}

fn edges_of(n: usize, mask: u64) -> Vec<(usize, usize)> {
    common::complete_edges(n).into_iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| e).collect()
}

fn fewest_crossings(g: &Graph, k: usize, max: usize) -> Option<usize> {
    match exact_min_k_decide(g, k, max).unwrap() {
        DecideOutcome::Yes(d) => Some(d.crossing_count()),
        DecideOutcome::No | DecideOutcome::BudgetExceeded { .. } => None,
    }
}

#[test]
fn oracle_planarity_on_known_graphs() {
    assert!(common::is_planar(4, &common::complete_edges(4)));
    assert!(!common::is_planar(5, &common::complete_edges(5)));
    let k33: Vec<_> = (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect();
    assert!(!common::is_planar(6, &k33));
    assert!(common::is_planar(6, &k33[1..]));
}

#[test]
fn k33_and_k6_agree_with_the_oracle() {
    let k33: Vec<_> = (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect();
    assert_eq!(fewest_crossings(&graph(6, &k33), 1, 9), Some(1));
    assert_eq!(common::min_k_crossings(6, &k33, 1, 9), Some(1));
    let k6 = common::complete_edges(6);
    assert_eq!(fewest_crossings(&graph(6, &k6), 1, 15), Some(3));
    assert_eq!(common::min_k_crossings(6, &k6, 1, 3), Some(3));
    assert_eq!(fewest_crossings(&graph(6, &k6), 0, 15), None);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn planarity_tests_agree(n in 3usize..9, mask in any::<u64>()) {
        let es = edges_of(n, mask);
        prop_assert_eq!(is_planar(n, &es), common::is_planar(n, &es));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn decider_agrees_on_six_vertices(mask in any::<u64>()) {
        let es = edges_of(6, mask);
        prop_assume!(common::connected(6, &es));
        let g = graph(6, &es);
        prop_assert_eq!(fewest_crossings(&g, 1, 3), common::min_k_crossings(6, &es, 1, 3));
        prop_assert_eq!(fewest_crossings(&g, 0, 0).is_some(), common::is_planar(6, &es));
    }
}
