use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use steinitz_core::cyclotomic::{galois_group, w_group};
use steinitz_core::{rt_dihedral, rt_with, ApGroupTree, ClassGroup, CycloSubgroup, QuadField, RtConfig, WConfig};

fn class_groups(c: &mut Criterion) {
    let mut g = c.benchmark_group("class_group");
    for d in [-3299i64, -30_119, -300_023] {
        g.bench_with_input(BenchmarkId::from_parameter(d), &d, |b, &d| {
            b.iter(|| ClassGroup::from_disc(black_box(d)).unwrap())
        });
    }
    g.finish();
}

fn w_groups(c: &mut Criterion) {
    let mut g = c.benchmark_group("w_group");
    for (d, m) in [(-239i64, 7u64), (-3299, 7), (-3299, 9)] {
        let cg = ClassGroup::from_disc(d).unwrap();
        let triv = CycloSubgroup::trivial(m).unwrap();
        let gal = galois_group(cg.field(), m).unwrap();
        g.bench_function(format!("{d}/mod{m}/trivial"), |b| {
            b.iter(|| w_group(&cg, &triv, &WConfig::default()).unwrap())
        });
        g.bench_function(format!("{d}/mod{m}/galois"), |b| {
            b.iter(|| w_group(&cg, &gal, &WConfig::default()).unwrap())
        });
    }
    g.finish();
}

fn rt(c: &mut Criterion) {
    let mut g = c.benchmark_group("rt");
    g.sample_size(20);
    let cfg = RtConfig::default();
    let trees = [
        ("c15", ApGroupTree::cyclic(15).unwrap()),
        ("d15", ApGroupTree::dihedral(15).unwrap()),
        (
            "d3xc5",
            ApGroupTree::direct(ApGroupTree::dihedral(3).unwrap(), ApGroupTree::cyclic(5).unwrap()).unwrap(),
        ),
    ];
    for d in [-239i64, -3299] {
        let cg = ClassGroup::from_disc(d).unwrap();
        for (name, t) in &trees {
            g.bench_function(format!("{d}/{name}"), |b| b.iter(|| rt_with(&cg, t, &cfg).unwrap()));
        }
        let field = QuadField::new(d).unwrap();
        g.bench_function(format!("{d}/dihedral15_closed"), |b| {
            b.iter(|| rt_dihedral(field, 15, &cfg).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, class_groups, w_groups, rt);
criterion_main!(benches);
