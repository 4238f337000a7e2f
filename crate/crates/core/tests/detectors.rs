use proptest::prelude::*;

use hyperturan_core::exact::random_hypergraph;
use hyperturan_core::patterns::oracle::oracle_contains;
use hyperturan_core::patterns::{check_family_witnesses, contains_disjoint_family, contains_pattern};
use hyperturan_core::{Component, FamilySpec, KHypergraph, PatternKind, Vertex};

fn kind() -> impl Strategy<Value = PatternKind> {
    prop::sample::select(PatternKind::ALL.to_vec())
}

fn host(k: usize) -> impl Strategy<Value = KHypergraph> {
    (k + 2..=9usize, 0..=9usize, any::<u64>()).prop_map(move |(n, m, seed)| {
        let m = m.min(hyperturan_core::formulas::binom(n as i64, k as i64).try_into().unwrap_or(9));
        random_hypergraph(n, k, m, seed).unwrap()
    })
}

/// Relabels vertices by a permutation derived from `seed`.
fn shuffled(h: &KHypergraph, seed: u64) -> KHypergraph {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut perm: Vec<Vertex> = (0..h.n() as Vertex).collect();
    perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
    KHypergraph::new(h.n(), h.k(), h.edges().iter().map(|e| e.iter().map(|v| perm[v as usize]).collect::<Vec<_>>()))
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn single_patterns_match_oracle(h in host(3), kind in kind(), len in 3..=5usize) {
        let spec = FamilySpec::single(3, kind, len).unwrap();
        let found = contains_pattern(&h, kind, len).unwrap();
        prop_assert_eq!(found.is_some(), oracle_contains(&h, &spec));
        if let Some(w) = found {
            prop_assert!(check_family_witnesses(&h, &spec, &[w]).is_ok());
        }
    }

    #[test]
    fn four_uniform_patterns_match_oracle(h in host(4), kind in kind(), len in 2..=4usize) {
        let len = len.max(kind.min_length());
        let spec = FamilySpec::single(4, kind, len).unwrap();
        prop_assert_eq!(contains_pattern(&h, kind, len).unwrap().is_some(), oracle_contains(&h, &spec));
    }

    #[test]
    fn families_match_oracle(h in host(3), a in kind(), b in kind(), la in 1..=3usize, lb in 1..=3usize) {
        let comps = vec![
            Component::new(a, la.max(a.min_length())).unwrap(),
            Component::new(b, lb.max(b.min_length())).unwrap(),
        ];
        let spec = FamilySpec::new(3, comps).unwrap();
        let found = contains_disjoint_family(&h, &spec).unwrap();
        prop_assert_eq!(found.is_some(), oracle_contains(&h, &spec));
        if let Some(ws) = found {
            prop_assert!(check_family_witnesses(&h, &spec, &ws).is_ok());
        }
    }

    #[test]
    fn adding_edges_keeps_containment(h in host(3), kind in kind(), len in 3..=4usize, extra in prop::collection::vec(0u32..9, 3)) {
        let before = contains_pattern(&h, kind, len).unwrap().is_some();
        let mut extra = extra;
        extra.sort_unstable();
        extra.dedup();
        if extra.len() == 3 && extra.iter().all(|&v| (v as usize) < h.n()) {
            let bigger = h.with_edge(extra).unwrap();
            let after = contains_pattern(&bigger, kind, len).unwrap().is_some();
            prop_assert!(!before || after);
        }
    }

    #[test]
    fn relabeling_preserves_containment(h in host(3), kind in kind(), len in 3..=5usize, seed in any::<u64>()) {
        let g = shuffled(&h, seed);
        prop_assert!(hyperturan_core::are_isomorphic(&h, &g));
        prop_assert_eq!(
            contains_pattern(&h, kind, len).unwrap().is_some(),
            contains_pattern(&g, kind, len).unwrap().is_some()
        );
    }
}

#[test]
fn sunflower_is_not_a_minimal_triangle() {
    let h = KHypergraph::new(7, 3, [[0, 1, 2], [0, 3, 4], [0, 5, 6]]).unwrap();
    assert!(contains_pattern(&h, PatternKind::MinimalCycle, 3).unwrap().is_none());
    assert!(contains_pattern(&h, PatternKind::BergeCycle, 3).unwrap().is_none());
    let t = KHypergraph::new(6, 3, [[0, 1, 2], [2, 3, 4], [4, 5, 0]]).unwrap();
    assert!(contains_pattern(&t, PatternKind::MinimalCycle, 3).unwrap().is_some());
}
