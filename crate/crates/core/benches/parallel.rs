//! Rayon against the sequential fallback on the two hot paths: one large
//! graded piece of a tensor power and a full exterior-power scan.

use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use kbundle::algebra::{parse_polynomial, Rationals, Ring};
use kbundle::bundle::{KernelBundle, SyzygyBundleSpec};
use kbundle::powers::{power_matrix, PowerKind};
use kbundle::stability::{hoppe_check, Mode};
use kbundle::{Engine, Limits};

fn syzygy(gens: &[&str], twist: i64) -> KernelBundle<Rationals> {
    let ring: Arc<Ring<Rationals>> = Ring::projective(Rationals, 2);
    let g = gens.iter().map(|s| parse_polynomial(s, &ring).unwrap()).collect();
    SyzygyBundleSpec::new(g, twist).unwrap().to_bundle().unwrap()
}

fn policies() -> [(&'static str, Limits); 2] {
    [("parallel", Limits::default()), ("sequential", Limits::sequential())]
}

fn tensor_piece(c: &mut Criterion) {
    let e = syzygy(&["X^4 - Y^4", "X^4 - Z^4", "X^2*Y^2", "X^2*Z^2", "Y^2*Z^2"], 5);
    let pres = power_matrix(&e, PowerKind::Tensor, 3).unwrap();
    let (src, tgt) = (pres.source_module(), pres.target_module());
    let mut g = c.benchmark_group("tensor_cube_degree_2");
    g.sample_size(10);
    for (name, limits) in policies() {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| kbundle::modgb::kernel_dim_linalg(&pres.matrix, &src, &tgt, black_box(2), &limits).unwrap())
        });
    }
    g.finish();
}

fn exterior_scan(c: &mut Criterion) {
    let e = syzygy(
        &[
            "X^6 - Y^4*Z^2",
            "Y^6 - X^2*Z^4",
            "X^4*Y^2 - Z^6",
            "X^2*Y^4",
            "Y^2*Z^4",
            "X^4*Z^2",
            "X^2*Y^2*Z^2",
        ],
        7,
    );
    let mut g = c.benchmark_group("hoppe_rank_six");
    g.sample_size(10);
    for (name, limits) in policies() {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| hoppe_check(black_box(&e), Engine::Linalg, Mode::StabilityEvidence, &limits).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, tensor_piece, exterior_scan);
criterion_main!(benches);
