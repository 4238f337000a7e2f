use criterion::{criterion_group, criterion_main, Criterion};
use hyperturan_core::constructions::build_minimal_extremal;
use hyperturan_core::exact::random_hypergraph;
use hyperturan_core::patterns::{contains_disjoint_family, contains_pattern};
use hyperturan_core::{FamilySpec, PatternKind};

fn absent_in_extremal(c: &mut Criterion) {
    let h = build_minimal_extremal(12, 4, &[3]).unwrap();
    c.bench_function("minimal 3-cycle absent, n=12 k=4", |b| {
        b.iter(|| contains_pattern(&h, PatternKind::MinimalCycle, 3).unwrap())
    });
    let h = build_minimal_extremal(12, 4, &[3, 3]).unwrap();
    let spec = FamilySpec::parse("minimal:3+minimal:3", 4).unwrap();
    c.bench_function("two minimal 3-cycles absent, n=12 k=4", |b| {
        b.iter(|| contains_disjoint_family(&h, &spec).unwrap())
    });
}

fn random_instances(c: &mut Criterion) {
    let h = random_hypergraph(20, 4, 200, 3).unwrap();
    for kind in [PatternKind::LinearCycle, PatternKind::BergeCycle, PatternKind::LinearPath] {
        c.bench_function(&format!("{kind} of length 5, random n=20 m=200"), |b| {
            b.iter(|| contains_pattern(&h, kind, 5).unwrap())
        });
    }
}

criterion_group!(benches, absent_in_extremal, random_instances);
criterion_main!(benches);
