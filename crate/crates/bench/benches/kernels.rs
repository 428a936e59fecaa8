use criterion::{criterion_group, criterion_main, Criterion};
use nksl2r_bench::fixtures;
use nksl2r_core::calculus::{jet, FD_STEP};
use nksl2r_core::verifier::{check_identity_suite, extract_phi, verify_entry};
use std::hint::black_box;

fn identities(c: &mut Criterion) {
    c.bench_function("identity_suite_100", |b| b.iter(|| check_identity_suite(black_box(42), 100).unwrap()));
}

fn kernels(c: &mut Criterion) {
    let entries = fixtures();
    let dim4 = entries.iter().find(|e| e.name.as_str() == "II_IIa").unwrap();
    c.bench_function("jet", |b| b.iter(|| jet(&dim4.surface, black_box(0.1), 0.2, FD_STEP).unwrap()));
    c.bench_function("extract_phi", |b| b.iter(|| extract_phi(&dim4.surface, black_box(0.1), 0.2, FD_STEP).unwrap()));
    let mut g = c.benchmark_group("verify_entry_5x5");
    g.sample_size(10);
    for e in &entries {
        g.bench_function(e.name.as_str(), |b| b.iter(|| verify_entry(e, (5, 5), FD_STEP).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, identities, kernels);
criterion_main!(benches);
