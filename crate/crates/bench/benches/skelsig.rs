use criterion::{black_box, criterion_group, criterion_main, Criterion};

use skelsig_core::genvec::{search, DEFAULT_BUDGET};
use skelsig_core::groups::{build_generalized_quaternion, bundled_catalog, build_dihedral};
use skelsig_core::skeleton::{admissible_set, verify_gap, Bounds};
use skelsig_core::OrbifoldSignature;

fn bench_search(c: &mut Criterion) {
    let q8 = build_generalized_quaternion(2).unwrap();
    let sig: OrbifoldSignature = "(2;2)".parse().unwrap();
    c.bench_function("search Q8 (2;2)", |b| {
        b.iter(|| search(black_box(&q8), black_box(&sig), DEFAULT_BUDGET))
    });

    let d6 = build_dihedral(6).unwrap();
    let none: OrbifoldSignature = "(0;2,2,2,2,2,3)".parse().unwrap();
    c.bench_function("search D6 (0;2,2,2,2,2,3)", |b| {
        b.iter(|| search(black_box(&d6), black_box(&none), DEFAULT_BUDGET))
    });
}

fn bench_admissible(c: &mut Criterion) {
    for sigma in [11u64, 48] {
        c.bench_function(&format!("admissible_set sigma={sigma}"), |b| {
            b.iter(|| admissible_set(black_box(sigma), Bounds::default_for(sigma)).unwrap())
        });
    }
}

fn bench_verify_gap(c: &mut Criterion) {
    let catalog = bundled_catalog();
    c.bench_function("verify_gap sigma=48 N=4", |b| {
        b.iter(|| verify_gap(black_box(48), 4, &catalog, DEFAULT_BUDGET).unwrap())
    });
}

criterion_group!(benches, bench_search, bench_admissible, bench_verify_gap);
criterion_main!(benches);
