use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use sgkit::closure::transformation_closure;
use sgkit::krd::kr_decompose;
use sgkit::langsep::{decide_fo_separability, parse_dfa};
use sgkit::psat::henckell_pointlikes;
use sgkit::witness::pointlikes_with_certificate;
use sgkit::Caps;

use sgkit_bench::{decomposition_targets, t3_generators};

fn bench_closure(c: &mut Criterion) {
    let gens = t3_generators();
    c.bench_function("closure/t3", |b| {
        b.iter(|| transformation_closure(black_box(&gens), 100).unwrap().sg.size())
    });
}

fn bench_pointlikes(c: &mut Criterion) {
    let caps = Caps::default();
    let z4 = sgkit::fixtures::z4();
    let b21 = sgkit::fixtures::b21();
    c.bench_function("pointlikes/z4-fixpoint", |b| {
        b.iter(|| henckell_pointlikes(black_box(&z4), caps).unwrap().len())
    });
    c.bench_function("pointlikes/b21-certified", |b| {
        b.iter(|| pointlikes_with_certificate(black_box(&b21), caps).unwrap().family.len())
    });
}

fn bench_decompose(c: &mut Criterion) {
    let caps = Caps::default();
    for (name, s) in decomposition_targets() {
        c.bench_function(&format!("decompose/{name}"), |b| {
            b.iter(|| kr_decompose(black_box(&s), caps).unwrap().depth)
        });
    }
}

fn bench_separation(c: &mut Criterion) {
    let caps = Caps::default();
    let even = parse_dfa(sgkit::fixtures::dfa::EVEN_AA).unwrap();
    let odd = parse_dfa(sgkit::fixtures::dfa::ODD_A).unwrap();
    c.bench_function("separate/even-odd", |b| {
        b.iter(|| decide_fo_separability(black_box(&even), black_box(&odd), caps).unwrap().is_separable())
    });
}

criterion_group!(benches, bench_closure, bench_pointlikes, bench_decompose, bench_separation);
criterion_main!(benches);
