use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use cusp_core::bernstein::{decide_root, DEFAULT_PRECISION};
use cusp_core::{delorme, int, jacobian_basis_direct, newton_puiseux, CurveEquation, Semigroup};

fn curves() -> Vec<(&'static str, CurveEquation)> {
    let nice = |n, m, z: &[(u64, i64)]| {
        CurveEquation::nice(Semigroup::new(n, m).unwrap(), z.iter().map(|&(j, c)| (j, int(c)))).unwrap()
    };
    vec![
        ("4_9", nice(4, 9, &[(1, 1)])),
        ("5_7", nice(5, 7, &[(4, 2), (6, -1)])),
        ("6_7", nice(6, 7, &[(3, 1), (4, -2), (9, 1)])),
    ]
}

fn bench_delorme(c: &mut Criterion) {
    let mut g = c.benchmark_group("delorme");
    for (name, eq) in curves() {
        g.bench_function(name, |b| b.iter(|| delorme(black_box(&eq)).unwrap()));
    }
    g.finish();
}

fn bench_jacobian(c: &mut Criterion) {
    let mut g = c.benchmark_group("jacobian_direct");
    for (name, eq) in curves() {
        g.bench_function(name, |b| b.iter(|| jacobian_basis_direct(black_box(&eq)).unwrap()));
    }
    g.finish();
}

fn bench_puiseux(c: &mut Criterion) {
    let mut g = c.benchmark_group("newton_puiseux");
    for (name, eq) in curves() {
        let h = eq.matching_t_horizon();
        g.bench_function(name, |b| b.iter(|| newton_puiseux(black_box(&eq), h).unwrap()));
    }
    g.finish();
}

fn bench_roots(c: &mut Criterion) {
    let mut g = c.benchmark_group("decide_root_all_j");
    for (name, eq) in curves() {
        let js = eq.cuspidal_sets().j;
        g.bench_function(name, |b| {
            b.iter(|| {
                for &j in &js {
                    black_box(decide_root(&eq, j, DEFAULT_PRECISION).unwrap());
                }
            })
        });
    }
    g.finish();
}

criterion_group!(benches, bench_delorme, bench_jacobian, bench_puiseux, bench_roots);
criterion_main!(benches);
