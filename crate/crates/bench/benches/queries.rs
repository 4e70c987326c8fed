use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use slugger_bench::summarized;
use slugger_core::query::{pagerank, NeighborOracle};
use slugger_core::summary::decode;

fn neighbor_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("neighbors_all_nodes");
    for (name, g, s) in summarized() {
        group.bench_function(BenchmarkId::new("summary", name), |b| {
            b.iter(|| {
                for v in 0..s.node_count() as u32 {
                    black_box(s.neighbors(v).unwrap());
                }
            })
        });
        group.bench_function(BenchmarkId::new("graph", name), |b| {
            b.iter(|| {
                for v in 0..g.node_count() as u32 {
                    black_box(g.neighbors(v).unwrap());
                }
            })
        });
    }
    group.finish();
}

fn pagerank_on_summary(c: &mut Criterion) {
    let mut group = c.benchmark_group("pagerank_20");
    group.sample_size(10);
    for (name, _, s) in summarized() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| pagerank(&s, 0.85, 20).unwrap()));
    }
    group.finish();
}

fn full_decode(c: &mut Criterion) {
    let mut group = c.benchmark_group("decode");
    for (name, _, s) in summarized() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| decode(&s).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, neighbor_sweep, pagerank_on_summary, full_decode);
criterion_main!(benches);
