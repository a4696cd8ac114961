//! Parallel versus sequential evaluation of the suite catalogue.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qcalc::runner::{self, Options};

fn suites(c: &mut Criterion) {
    let all = runner::catalogue(Vec::new()).unwrap();
    let relations = runner::select(all.clone(), "relations/*").unwrap();
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    for (label, set) in [("relations", &relations), ("all", &all)] {
        for (mode, jobs) in [("sequential", Some(1)), ("parallel", None)] {
            let opts = Options { jobs, ..Options::default() };
            group.bench_with_input(BenchmarkId::new(mode, label), set, |b, s| b.iter(|| runner::run(s, &opts)));
        }
    }
    group.finish();
}

criterion_group!(benches, suites);
criterion_main!(benches);
