use criterion::{criterion_group, criterion_main, Criterion};
use eb_core::dsl::{elaborate, parse, pretty};
use eb_core::structure::{analyze, claim_b_sequence};

fn ring(src: &str) -> eb_core::FiniteRing {
    elaborate(&parse(src).unwrap(), 4096).unwrap()
}

fn structure_pass(c: &mut Criterion) {
    let mut g = c.benchmark_group("analyze");
    for src in ["Z/360", "Z/4 x Z/9 x GF(25)", "bool(10)"] {
        let r = ring(src);
        g.bench_function(src, |b| b.iter(|| analyze(&r)));
    }
    g.finish();
}

fn certificates(c: &mut Criterion) {
    let r = ring("Z/105");
    c.bench_function("claim_b Z/105", |b| b.iter(|| claim_b_sequence(&r).unwrap()));
}

fn parser(c: &mut Criterion) {
    let src = "(Z/2 x Z/3)[x]/(x^2-2*x+1) x GF(49) x bool(5)";
    c.bench_function("parse", |b| b.iter(|| parse(src).unwrap()));
    let e = parse(src).unwrap();
    c.bench_function("pretty", |b| b.iter(|| pretty(&e)));
}

criterion_group!(benches, structure_pass, certificates, parser);
criterion_main!(benches);
