use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pdakit::combinators::star_product;
use pdakit::families::{disjoint_union_coloring, intersection_t_coloring, restricted_combined_family};
use pdakit::sim::{random_demands, simulate_demands, FileLibrary};
use pdakit::{ColoredBipartiteGraph, Execution, PdaArray};
use std::hint::black_box;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn workloads() -> Vec<(&'static str, PdaArray)> {
    let product =
        star_product(&[disjoint_union_coloring(6, 1, 2).unwrap(), intersection_t_coloring(5, 2, 2, 1).unwrap()])
            .unwrap()
            .to_pda()
            .unwrap();
    vec![("restricted(8,2,4,2)", restricted_combined_family(8, 2, 4, 2).unwrap()), ("du(6,1,2)*it(5,2,2,1)", product)]
}

fn validation(c: &mut Criterion) {
    let mut group = c.benchmark_group("validate");
    for (name, p) in workloads() {
        for (mode, exec) in MODES {
            group
                .bench_with_input(BenchmarkId::new(mode, name), &p, |b, p| b.iter(|| black_box(p.validate_with(exec))));
        }
    }
    group.finish();
}

fn strong_coloring(c: &mut Criterion) {
    let mut group = c.benchmark_group("strong_coloring");
    for (name, p) in workloads() {
        let g = ColoredBipartiteGraph::from(&p);
        for (mode, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(mode, name), &g, |b, g| {
                b.iter(|| black_box(g.strong_coloring_report_with(exec)))
            });
        }
    }
    group.finish();
}

fn demand_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("simulate_demands");
    group.sample_size(20);
    for (name, p) in workloads() {
        let lib = FileLibrary::random(4, 4 * p.rows(), 1).unwrap();
        let demands = random_demands(p.cols(), 4, 64, 2);
        for (mode, exec) in MODES {
            group.bench_function(BenchmarkId::new(mode, name), |b| {
                b.iter(|| black_box(simulate_demands(&p, &lib, &demands, exec)))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, validation, strong_coloring, demand_sweep);
criterion_main!(benches);
