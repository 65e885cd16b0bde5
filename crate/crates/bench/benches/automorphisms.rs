use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use polyaut::{jvk_factor, verify_automorphism};
use polyaut_bench::{maps, words};

const LENGTHS: [usize; 3] = [2, 4, 6];

fn compose(c: &mut Criterion) {
    let mut group = c.benchmark_group("compose");
    for (len, w) in words(2, &LENGTHS) {
        let a = w.eval().unwrap();
        group.bench_with_input(BenchmarkId::new("f∘f⁻¹", len), &a, |b, a| {
            b.iter(|| black_box(a.fwd().compose(a.inv()).unwrap()))
        });
    }
    group.finish();
}

fn verify(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    for n in [2, 3] {
        for (len, f) in maps(n, &LENGTHS) {
            group.bench_with_input(BenchmarkId::new(format!("n={n}"), len), &f, |b, f| {
                b.iter(|| black_box(verify_automorphism(f).unwrap()))
            });
        }
    }
    group.finish();
}

fn jvk(c: &mut Criterion) {
    let mut group = c.benchmark_group("jvk");
    for (len, w) in words(2, &LENGTHS) {
        let a = w.eval().unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(len), &a, |b, a| {
            b.iter(|| black_box(jvk_factor(a).unwrap()))
        });
    }
    group.finish();
}

fn word_eval(c: &mut Criterion) {
    let mut group = c.benchmark_group("word-eval");
    for (len, w) in words(3, &LENGTHS) {
        group.bench_with_input(BenchmarkId::from_parameter(len), &w, |b, w| {
            b.iter(|| black_box(w.eval().unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, compose, verify, jvk, word_eval);
criterion_main!(benches);
