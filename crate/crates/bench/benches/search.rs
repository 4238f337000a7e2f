use criterion::{criterion_group, criterion_main, Criterion};
use hyperturan_core::exact::{max_edges_avoiding, SearchBudget};
use hyperturan_core::extract::extract_disjoint_minimal;
use hyperturan_core::{constructions::build_minimal_extremal, FamilySpec};

fn exact_search(c: &mut Criterion) {
    let spec = FamilySpec::parse("minimal:3", 4).unwrap();
    c.bench_function("ex_4(6; minimal 3-cycle)", |b| {
        b.iter(|| max_edges_avoiding(6, 4, &spec, SearchBudget::default()).unwrap())
    });
    let spec = FamilySpec::parse("linear:3", 3).unwrap();
    c.bench_function("ex_3(6; linear 3-cycle)", |b| {
        b.iter(|| max_edges_avoiding(6, 3, &spec, SearchBudget::default()).unwrap())
    });
}

fn extraction(c: &mut Criterion) {
    let h = build_minimal_extremal(14, 4, &[3, 3]).unwrap().with_edge([4, 5, 6, 7]).unwrap();
    c.bench_function("extract two minimal 3-cycles, n=14 k=4", |b| {
        b.iter(|| extract_disjoint_minimal(&h, &[3, 3]).unwrap())
    });
}

criterion_group!(benches, exact_search, extraction);
criterion_main!(benches);
