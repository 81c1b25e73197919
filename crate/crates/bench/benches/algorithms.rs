use std::collections::BTreeSet;
use std::hint::black_box;

use concise_bench::{group, word, GROUPS};
use concise_core::formulae::{definable_set, parse_formula};
use concise_core::nilpotent::hall_w_polynomials;
use concise_core::weakrat::{is_weakly_rational_set, witness_set_ena};
use concise_core::words::{word_values, word_values_naive};
use concise_core::{Budget, Class2Presentation, ClassAlgebra, IndependentChoiceSystem};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn word_maps(c: &mut Criterion) {
    let mut g = c.benchmark_group("word_values");
    let comm = word("[x,y]");
    for &name in GROUPS {
        let grp = group(name);
        g.bench_with_input(BenchmarkId::new("dp", name), &grp, |b, grp| {
            b.iter(|| word_values(grp, black_box(&comm), Budget::DEFAULT).unwrap())
        });
    }
    // the naive enumeration is only affordable on the smaller groups
    for &name in &GROUPS[..4] {
        let grp = group(name);
        g.bench_with_input(BenchmarkId::new("naive", name), &grp, |b, grp| {
            b.iter(|| word_values_naive(grp, black_box(&comm), Budget::DEFAULT).unwrap())
        });
    }
    let long = word("[[x1,x2],[x3,x4]]");
    let s4 = group("S4");
    g.bench_function("dp/[[x1,x2],[x3,x4]] on S4", |b| {
        b.iter(|| word_values(&s4, black_box(&long), Budget::DEFAULT).unwrap())
    });
    g.finish();
}

fn formulas(c: &mut Criterion) {
    let mut g = c.benchmark_group("formulae");
    let centre = parse_formula("forall x: x*y=y*x").unwrap();
    let ena = parse_formula("exists x1, x2: [[y,x1],x2] != 1").unwrap();
    for &name in GROUPS {
        let grp = group(name);
        g.bench_with_input(BenchmarkId::new("centre", name), &grp, |b, grp| {
            b.iter(|| definable_set(grp, black_box(&centre), Budget::DEFAULT).unwrap())
        });
    }
    let s4 = group("S4");
    g.bench_function("ena depth 2 on S4", |b| b.iter(|| definable_set(&s4, black_box(&ena), Budget::DEFAULT).unwrap()));
    g.bench_function("witness set on S4", |b| {
        b.iter(|| witness_set_ena(&s4, black_box(&ena), Budget::DEFAULT).unwrap())
    });
    g.finish();
}

fn weak_rationality(c: &mut Criterion) {
    let mut g = c.benchmark_group("weak_rationality");
    for &name in GROUPS {
        let grp = group(name);
        let values = word_values(&grp, &word("[x,y]"), Budget::DEFAULT).unwrap().set;
        g.bench_with_input(BenchmarkId::new("commutators", name), &(grp, values), |b, (grp, values)| {
            b.iter(|| is_weakly_rational_set(grp, black_box(values)).unwrap())
        });
    }
    g.finish();
}

fn class_ring(c: &mut Criterion) {
    let mut g = c.benchmark_group("classring");
    for &name in GROUPS {
        let grp = group(name);
        g.bench_with_input(BenchmarkId::new("structure constants", name), &grp, |b, grp| {
            b.iter(|| ClassAlgebra::new(black_box(grp)))
        });
        let alg = ClassAlgebra::new(&grp);
        let last = alg.classes().len() - 1;
        g.bench_with_input(BenchmarkId::new("lambda len 3", name), &alg, |b, alg| {
            b.iter(|| alg.lambda(black_box(&[last, last, last]), 0, Budget::DEFAULT).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("burnside m=-1", name), &alg, |b, alg| {
            b.iter(|| alg.verify_burnside(black_box(-1)).unwrap())
        });
    }
    g.finish();
}

fn hall(c: &mut Criterion) {
    let mut g = c.benchmark_group("hall");
    for s in [2, 3, 4] {
        let p = Class2Presentation::free2(s);
        let w = word("[x1,x2]^2 x1^3 [x2,x1 x2]");
        g.bench_with_input(BenchmarkId::new("free2", s), &p, |b, p| {
            b.iter(|| hall_w_polynomials(p, black_box(&w)).unwrap())
        });
    }
    g.finish();
}

fn independent_choice(c: &mut Criterion) {
    let member = |xs: &[u8]| xs.iter().copied().collect::<BTreeSet<u8>>();
    let sys = IndependentChoiceSystem::new(
        (0..6).collect(),
        vec![member(&[0]), member(&[0, 1, 2]), member(&[0, 2, 3]), member(&[3, 4, 5])],
    )
    .unwrap();
    c.bench_function("ics/greedy", |b| b.iter(|| black_box(&sys).find_order().unwrap()));
    c.bench_function("ics/all orders", |b| b.iter(|| black_box(&sys).all_orders().unwrap()));
}

criterion_group!(benches, word_maps, formulas, weak_rationality, class_ring, hall, independent_choice);
criterion_main!(benches);
