use hyperturan_core::constructions::{build_linear_extremal, build_minimal_extremal};
use hyperturan_core::exact::{max_edges_avoiding, max_edges_unpruned, probe_threshold, SearchBudget};
use hyperturan_core::patterns::contains_disjoint_family;
use hyperturan_core::{CycleVariant, FamilySpec};

#[test]
fn constructions_are_lower_bounds() {
    for (n, k, spec, lengths) in [(6, 4, "minimal:3", &[3][..]), (6, 3, "minimal:3", &[3]), (6, 3, "minimal:4", &[4])] {
        let s = FamilySpec::parse(spec, k).unwrap();
        let r = max_edges_avoiding(n, k, &s, SearchBudget::default()).unwrap();
        assert!(r.exhaustive);
        assert!(contains_disjoint_family(&r.witness, &s).unwrap().is_none());
        assert!(r.max_edges >= build_minimal_extremal(n, k, lengths).unwrap().edge_count(), "{n} {k} {spec}");
    }
    let s = FamilySpec::parse("linear:3", 3).unwrap();
    let r = max_edges_avoiding(6, 3, &s, SearchBudget::default()).unwrap();
    assert!(r.max_edges >= build_linear_extremal(6, 3, &[3]).unwrap().edge_count());
    assert_eq!(r.max_edges, max_edges_unpruned(6, 3, &s).unwrap());
}

#[test]
fn small_n_probe_reports_the_gap() {
    let p = probe_threshold(5, 4, &[3], CycleVariant::Minimal, SearchBudget::default()).unwrap();
    assert!(p.exhaustive);
    assert_eq!(p.formula, "4");
    assert_eq!(p.construction, Some(4));
    assert!(p.above_formula || p.below_formula || p.search_max == 4);
}
