use commgraph::catalog::scan_noncograph;
use commgraph::graph::commuting_graph_with;
use commgraph::{Catalog, Execution, FamilySpec, VertexScope};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn graph_construction(c: &mut Criterion) {
    let mut group = c.benchmark_group("commuting_graph");
    for spec in ["alt:6", "psl2:16", "sym:6"] {
        let g = spec.parse::<FamilySpec>().unwrap().build().unwrap();
        for (mode, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(mode, spec), &g, |b, g| {
                b.iter(|| commuting_graph_with(black_box(g), VertexScope::NonCentral, exec))
            });
        }
    }
    group.finish();
}

fn catalog_scan(c: &mut Criterion) {
    let catalog = Catalog::shipped();
    let mut group = c.benchmark_group("noncograph_scan");
    group.sample_size(10);
    for (mode, exec) in MODES {
        group.bench_function(BenchmarkId::new(mode, 36), |b| {
            b.iter(|| scan_noncograph(black_box(&catalog), 36, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, graph_construction, catalog_scan);
criterion_main!(benches);
