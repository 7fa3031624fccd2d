use std::hint::black_box;

use baerkit::par::Execution;
use baerkit::verify::{run_suite, VerifyConfig};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const SUITES: [(&str, usize); 3] = [("dimension", 16), ("split", 16), ("witness", 16)];

fn sweeps(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    for (suite, cases) in SUITES {
        for (label, execution) in [
            ("parallel", Execution::Parallel),
            ("sequential", Execution::Sequential),
        ] {
            let cfg = VerifyConfig {
                seed: 1,
                cases,
                execution,
            };
            group.bench_with_input(BenchmarkId::new(suite, label), &cfg, |b, cfg| {
                b.iter(|| black_box(run_suite(suite, cfg).unwrap()))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, sweeps);
criterion_main!(benches);
