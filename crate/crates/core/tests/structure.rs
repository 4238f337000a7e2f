use proptest::prelude::*;

use hyperturan_core::exact::random_hypergraph;
use hyperturan_core::formulas::{
    binom, kmw_bound, linear_family_turan, meeting_sum, minimal_family_turan, single_cycle_turan, CycleVariant,
};
use hyperturan_core::{are_isomorphic, edgelist, KHypergraph, Vertex};

fn host() -> impl Strategy<Value = KHypergraph> {
    (5..=12usize, 2..=4usize, 0..=40usize, any::<u64>()).prop_map(|(n, k, m, seed)| {
        let total = binom(n as i64, k as i64).try_into().unwrap_or(40usize);
        random_hypergraph(n, k, m.min(total), seed).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn removal_splits_the_edges(h in host(), picks in prop::collection::vec(0u32..12, 0..5)) {
        let mut s: Vec<Vertex> = picks.into_iter().filter(|&v| (v as usize) < h.n()).collect();
        s.sort_unstable();
        s.dedup();
        let reduced = h.remove_vertices(&s).unwrap();
        prop_assert_eq!(reduced.graph.edge_count() + h.incident_edge_count(&s).unwrap(), h.edge_count());
        prop_assert_eq!(reduced.graph.n(), h.n() - s.len());
        for e in reduced.graph.edges() {
            prop_assert!(h.contains_edge(&reduced.lift_edge(e)));
        }
    }

    #[test]
    fn edge_lists_round_trip(h in host()) {
        let back = edgelist::parse(&edgelist::write(&h)).unwrap();
        prop_assert_eq!(&back, &h);
        prop_assert!(are_isomorphic(&back, &h));
    }

    #[test]
    fn pair_scan_is_complete(h in host()) {
        let quadratic = h.edges().iter().enumerate().any(|(i, a)| {
            h.edges()[i + 1..].iter().any(|b| a.intersection(b).len() == 1)
        });
        let found = h.find_pair_sharing_exactly_one();
        prop_assert_eq!(found.is_some(), quadratic);
        if found.is_none() && h.k() >= 3 {
            prop_assert!(num_bigint::BigUint::from(h.edge_count()) <= kmw_bound(h.n(), h.k()));
        }
    }

    #[test]
    fn hockey_stick(n in 0..60usize, t in 0..60usize, k in 1..8usize) {
        let t = t.min(n);
        prop_assert_eq!(binom(n as i64, k as i64) - binom(n as i64 - t as i64, k as i64), meeting_sum(n, k, t));
    }

    #[test]
    fn evaluators_grow_with_n(n in 0..40usize, k in 2..7usize, lengths in prop::collection::vec(3..9usize, 1..4)) {
        for f in [minimal_family_turan, linear_family_turan] {
            prop_assert!(f(n, k, &lengths).unwrap().value <= f(n + 1, k, &lengths).unwrap().value);
        }
    }

    #[test]
    fn odd_lengths_agree(n in 0..40usize, k in 2..7usize, half in 1..5usize) {
        let l = 2 * half + 1;
        let a = single_cycle_turan(n, k, l, CycleVariant::Minimal).unwrap().value;
        let b = single_cycle_turan(n, k, l, CycleVariant::Linear).unwrap().value;
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(a, meeting_sum(n, k, half));
    }
}

#[test]
fn isomorphism_distinguishes_shapes() {
    let path = KHypergraph::new(7, 3, [[0, 1, 2], [2, 3, 4], [4, 5, 6]]).unwrap();
    let star = KHypergraph::new(7, 3, [[0, 1, 2], [0, 3, 4], [0, 5, 6]]).unwrap();
    let relabeled = KHypergraph::new(7, 3, [[6, 5, 4], [4, 3, 2], [2, 1, 0]]).unwrap();
    assert!(!are_isomorphic(&path, &star));
    assert!(are_isomorphic(&path, &relabeled));
}
