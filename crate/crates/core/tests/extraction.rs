#![allow(clippy::manual_div_ceil)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hyperturan_core::constructions::build_minimal_extremal;
use hyperturan_core::exact::random_hypergraph;
use hyperturan_core::extract::{
    brute_force_extract, extract_disjoint_minimal, extract_with_trace, find_p3_avoiding, partition_xy,
    select_terminal_set, Outcome,
};
use hyperturan_core::patterns::{check_family_witnesses, contains_pattern};
use hyperturan_core::{CycleVariant, FamilySpec, KHypergraph, PatternKind, Vertex};

fn check_trace(h: &KHypergraph, trace: &hyperturan_core::ExtractionTrace) {
    for level in &trace.levels {
        if level.outcome != Outcome::ProofPath {
            continue;
        }
        let l1 = level.lengths[0];
        assert_eq!(level.terminal_set.len(), (l1 + 1) / 2);
        let c = level.cycle_vertices.len();
        assert!(l1 <= c && c <= (h.k() - 1) * l1);
        let w: std::collections::BTreeSet<Vertex> = level.w.iter().copied().collect();
        for (a, b) in &level.pairs {
            assert_eq!(a.intersection_size(b), 1);
            assert!(a.iter().chain(b.iter()).all(|v| !w.contains(&v)));
        }
        let expected_pairs = if l1 % 2 == 0 { l1 / 2 } else { (l1 - 3) / 2 };
        assert_eq!(level.pairs.len(), expected_pairs);
        assert_eq!(level.triple.is_some(), l1 % 2 == 1);
    }
}

#[test]
fn agrees_with_brute_force_on_dense_random_instances() {
    let mut proof_path = 0;
    for seed in 0..100u64 {
        let h = random_hypergraph(20, 4, 900, seed).unwrap();
        let lengths = [[3, 3], [4, 3], [3, 4], [4, 4]][(seed % 4) as usize];
        let spec = FamilySpec::cycles(4, PatternKind::MinimalCycle, &lengths).unwrap();
        let brute = brute_force_extract(&h, &spec).unwrap();
        let (result, trace) = extract_with_trace(&h, &lengths, CycleVariant::Minimal);
        assert_eq!(result.is_ok(), brute.is_some(), "seed {seed}");
        if let Ok(ws) = result {
            check_family_witnesses(&h, &spec, &ws).unwrap();
        }
        check_trace(&h, &trace);
        proof_path += trace.levels.iter().filter(|l| l.outcome == Outcome::ProofPath).count();
    }
    assert!(proof_path > 0, "the construction never succeeded");
}

#[test]
fn extremal_plus_random_edge_succeeds() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in 12..=14 {
        let base = build_minimal_extremal(n, 4, &[3]).unwrap();
        for _ in 0..20 {
            let mut pool: Vec<Vertex> = (1..n as Vertex).collect();
            pool.shuffle(&mut rng);
            let h = base.with_edge(pool[..4].iter().copied()).unwrap();
            let (ws, trace) = extract_disjoint_minimal(&h, &[3]).unwrap();
            ws[0].validate_as(PatternKind::MinimalCycle).unwrap();
            check_trace(&h, &trace);
        }
    }
    let _ = rng.gen::<u8>();
}

#[test]
fn three_path_in_common_sets_of_a_dense_instance() {
    let h = random_hypergraph(30, 4, 6000, 11).unwrap();
    let c = contains_pattern(&h, PatternKind::MinimalCycle, 3).unwrap().unwrap();
    let cv: Vec<Vertex> = c.vertex_set().into_iter().collect();
    let sel = select_terminal_set(&partition_xy(&h, &cv, 3)).unwrap();
    for r in &sel.r_u {
        for &u in &sel.u {
            assert!(h.contains_edge(&r.with_vertex(u)));
        }
    }
    let h0 = KHypergraph::new(30, 3, sel.r_u.iter().map(|r| r.iter())).unwrap();
    let [x, y, z] = find_p3_avoiding(&h0, &[]).unwrap();
    assert_eq!((x.intersection_size(&y), y.intersection_size(&z), x.intersection_size(&z)), (1, 1, 0));
}

#[test]
fn linear_variant_on_dense_instances() {
    // the two cycles need 9 + 12 of the 24 vertices
    for seed in 0..20u64 {
        let h = random_hypergraph(24, 4, 2500, seed).unwrap();
        let spec = FamilySpec::cycles(4, PatternKind::LinearCycle, &[3, 4]).unwrap();
        let (result, trace) = extract_with_trace(&h, &[3, 4], CycleVariant::Linear);
        assert_eq!(trace.order, vec![4, 3]);
        assert_eq!(result.is_ok(), brute_force_extract(&h, &spec).unwrap().is_some());
        if let Ok(ws) = result {
            assert_eq!((ws[0].length, ws[1].length), (3, 4));
            check_family_witnesses(&h, &spec, &ws).unwrap();
        }
        check_trace(&h, &trace);
    }
}
