use std::collections::BTreeMap;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use moduli_core::oracles::{witten_sum, LatticeSumConfig};
use moduli_core::pairing::{pairing_a, pairing_b, pairing_f, PairingSpec};
use moduli_core::verlinde::{verlinde_check, VerlindeSpec, DEFAULT_DIGITS};

fn pairings(c: &mut Criterion) {
    let mut g = c.benchmark_group("pairing");
    g.bench_function("a rank 2 genus 5", |b| b.iter(|| pairing_a(black_box(&PairingSpec::new(2, 1, 5))).unwrap()));
    g.bench_function("a rank 3 genus 3", |b| {
        b.iter(|| pairing_a(black_box(&PairingSpec::new(3, 1, 3).with_a(2, 2))).unwrap())
    });
    g.bench_function("f rank 3 genus 2 f3^2", |b| {
        b.iter(|| pairing_f(black_box(&PairingSpec::new(3, 1, 2).with_f(3, 2))).unwrap())
    });
    g.bench_function("b genus reduction", |b| {
        let s = PairingSpec::new(2, 1, 3).with_a(2, 1).with_b(2, 1).with_b(2, 4);
        b.iter(|| pairing_b(black_box(&s)).unwrap())
    });
    g.finish();
}

fn checks(c: &mut Criterion) {
    let mut g = c.benchmark_group("checks");
    g.sample_size(10);
    g.bench_function("verlinde rank 3 genus 3 k 9", |b| {
        b.iter(|| verlinde_check(black_box(&VerlindeSpec::new(3, 1, 3, 9)), DEFAULT_DIGITS).unwrap())
    });
    g.bench_function("witten rank 3 cutoff 200", |b| {
        b.iter(|| witten_sum(3, 1, 2, &BTreeMap::new(), &LatticeSumConfig::new(200)).unwrap())
    });
    g.finish();
}

criterion_group!(benches, pairings, checks);
criterion_main!(benches);
