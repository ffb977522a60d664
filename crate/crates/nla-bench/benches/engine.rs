//! Benchmarks for the hot paths of the engine: cyclotomic arithmetic,
//! quotient construction, the symmetrizer-rank oracle, and bracket spans.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use std::hint::black_box;

use nla_core::cyclo::{CycloField, ScalarLit};
use nla_core::lie::lie_tower;
use nla_core::free::BracketKind;
use nla_core::tower::{symmetrizer_rank, NicholsTower};
use nla_core::verify::{fixture_space, fixture_tower};

fn cyclotomic_mul(c: &mut Criterion) {
    let f = CycloField::new(12).expect("conductor 12");
    let z = f.from_literal(&ScalarLit::zeta(1, 12)).expect("primitive root");
    let a = f.add(&f.pow(&z, 5).unwrap(), &f.from_integer(3));
    let b = f.sub(&f.pow(&z, 7).unwrap(), &f.from_integer(2));
    c.bench_function("cyclo-mul-conductor-12", |bench| {
        bench.iter(|| black_box(f.mul(black_box(&a), black_box(&b))))
    });
}

fn tower_build(c: &mut Criterion) {
    let mut g = c.benchmark_group("tower-build");
    g.sample_size(10);
    g.bench_function("order3-pair-cap9", |bench| {
        bench.iter_batched(
            || fixture_space("a2-z3").expect("fixture"),
            |space| NicholsTower::build(space, 9).expect("builds"),
            BatchSize::LargeInput,
        )
    });
    g.finish();
}

fn symmetrizer_oracle(c: &mut Criterion) {
    let space = fixture_space("rank3-complete").expect("fixture");
    let mut g = c.benchmark_group("symmetrizer-rank");
    g.sample_size(10);
    g.bench_function("rank3-degree4", |bench| {
        bench.iter(|| symmetrizer_rank(black_box(&space), 4).expect("rank"))
    });
    g.finish();
}

fn bracket_span(c: &mut Criterion) {
    let t = fixture_tower("qls-23").expect("fixture");
    let mut g = c.benchmark_group("bracket-span");
    g.sample_size(20);
    g.bench_function("minus-span-cap6", |bench| {
        bench.iter(|| lie_tower(black_box(&t), BracketKind::Minus, 6).expect("span"))
    });
    g.finish();
}

criterion_group!(
    benches,
    cyclotomic_mul,
    tower_build,
    symmetrizer_oracle,
    bracket_span
);
criterion_main!(benches);
