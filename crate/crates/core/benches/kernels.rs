use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use vf_core::bfun::{functional_equation_solvable, BfOptions};
use vf_core::graphmod::Hyper;
use vf_core::polyalg::parse::default_names;
use vf_core::polyalg::{parse_poly, UnivariatePoly};
use vf_core::vfilt::{TruncationParams, VContext, Window};
use vf_core::Q;

fn pools() -> Vec<(&'static str, rayon::ThreadPool)> {
    vec![
        ("sequential", rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap()),
        ("parallel", rayon::ThreadPoolBuilder::new().build().unwrap()),
    ]
}

fn window(c: &mut Criterion) {
    let f = parse_poly("x^2 + y^3", &default_names(2)).unwrap();
    let ctx = VContext::new(&f, &BfOptions::default()).unwrap();
    let params = TruncationParams::new(2, 6, None, 3).unwrap();
    let alpha = Q::new(9.into(), 10.into());
    // Warm the lattice cache so only the column reductions are timed.
    Window::compute(&ctx, params, &alpha, false).unwrap();
    let mut g = c.benchmark_group("cusp_window_k2_d6");
    g.sample_size(10);
    for (name, pool) in pools() {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| pool.install(|| black_box(Window::compute(&ctx, params, &alpha, false).unwrap().dim())))
        });
    }
    g.finish();
}

fn minimality_solve(c: &mut Criterion) {
    let hy = Hyper::new(parse_poly("x^2 + y^3", &default_names(2)).unwrap()).unwrap();
    let mut b = UnivariatePoly::one();
    for (p, q) in [(1, 1), (5, 6)] {
        b = &b * &UnivariatePoly::linear(Q::new(p.into(), q.into()));
    }
    let mut g = c.benchmark_group("cusp_minimality_deg4");
    g.sample_size(10);
    for (name, pool) in pools() {
        g.bench_function(BenchmarkId::from_parameter(name), |bch| {
            bch.iter(|| pool.install(|| black_box(functional_equation_solvable(&hy, &b, 4).unwrap())))
        });
    }
    g.finish();
}

criterion_group!(benches, window, minimality_solve);
criterion_main!(benches);
