use criterion::{criterion_group, criterion_main, Criterion};
use eb_core::dsl::{elaborate, parse};
use eb_core::solver::{erdos_burgess, erdos_burgess_oracle, SearchConfig};

fn ring(src: &str) -> eb_core::FiniteRing {
    elaborate(&parse(src).unwrap(), 4096).unwrap()
}

fn exact_search(c: &mut Criterion) {
    let mut g = c.benchmark_group("erdos_burgess");
    for src in ["GF(8)", "GF(9)", "GF(11)", "GF(13)", "Z/24", "Z/36"] {
        let s = ring(src).mult_semigroup();
        g.bench_function(src, |b| {
            b.iter(|| erdos_burgess(&s, &SearchConfig::default()).unwrap())
        });
    }
    g.finish();
}

fn oracle_comparison(c: &mut Criterion) {
    let mut g = c.benchmark_group("oracle");
    for src in ["Z/12", "GF(8)"] {
        let s = ring(src).mult_semigroup();
        g.bench_function(src, |b| b.iter(|| erdos_burgess_oracle(&s).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, exact_search, oracle_comparison);
criterion_main!(benches);
