use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use mesml_bench::{scaled, yogurt};
use mesml_core::corpus::YOGURT;
use mesml_core::reporting::{export_dot, link_report, model_stats};
use mesml_core::{parse_spec, serialize_spec, validate_spec, ViewTag};

fn yogurt_pipeline(c: &mut Criterion) {
    let spec = yogurt();
    let mut g = c.benchmark_group("yogurt");
    g.bench_function("parse", |b| {
        b.iter(|| parse_spec(black_box(YOGURT)).unwrap())
    });
    g.bench_function("validate", |b| b.iter(|| validate_spec(black_box(&spec))));
    g.bench_function("serialize", |b| b.iter(|| serialize_spec(black_box(&spec))));
    g.bench_function("export_pp", |b| {
        b.iter(|| export_dot(black_box(&spec), ViewTag::Pp, None).unwrap())
    });
    g.bench_function("link_report", |b| {
        b.iter(|| link_report(black_box(&spec)).unwrap())
    });
    g.finish();
}

fn scale(c: &mut Criterion) {
    let (spec, text) = scaled();
    let mut g = c.benchmark_group("scale_10k");
    g.sample_size(20);
    g.bench_function("parse", |b| {
        b.iter(|| parse_spec(black_box(&text)).unwrap())
    });
    g.bench_function("validate", |b| b.iter(|| validate_spec(black_box(&spec))));
    g.bench_function("serialize", |b| b.iter(|| serialize_spec(black_box(&spec))));
    g.bench_function("stats", |b| b.iter(|| model_stats(black_box(&spec))));
    g.finish();
}

criterion_group!(benches, yogurt_pipeline, scale);
criterion_main!(benches);
