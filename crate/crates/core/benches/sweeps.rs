use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ffhyp_core::chargauss::{CharGroup, GaussMethod};
use ffhyp_core::curves::IsoClassTable;
use ffhyp_core::fieldcore::{odd_primes_upto, ExtFieldCtx, FieldCtx};
use ffhyp_core::hyper::phi4_eps3;
use ffhyp_core::par::{self, Exec};
use std::hint::black_box;

fn gauss_tables(c: &mut Criterion) {
    let mut g = c.benchmark_group("gauss_table");
    for p in [101u64, 401, 1009] {
        let f = FieldCtx::new(p).unwrap();
        for (name, method) in [("naive", GaussMethod::Naive), ("fft", GaussMethod::Fft)] {
            g.bench_with_input(BenchmarkId::new(name, p), &f, |b, f| {
                b.iter(|| CharGroup::with_method(black_box(f), method))
            });
        }
    }
    // F_{13^2}: 168 characters
    let ext = ExtFieldCtx::new(13).unwrap();
    for (name, method) in [("naive", GaussMethod::Naive), ("fft", GaussMethod::Fft)] {
        g.bench_function(BenchmarkId::new(name, "13^2"), |b| {
            b.iter(|| CharGroup::with_method(black_box(&ext), method))
        });
    }
    g.finish();
}

fn flagship_sweep(exec: Exec, pmax: u64) -> i64 {
    par::map(exec, odd_primes_upto(pmax), |p| {
        let g = CharGroup::for_prime(p).unwrap();
        phi4_eps3(&g, -1).unwrap().rounded.re
    })
    .into_iter()
    .sum()
}

fn sweeps(c: &mut Criterion) {
    let mut g = c.benchmark_group("sweep");
    g.sample_size(10);
    for (name, exec) in [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)] {
        g.bench_function(BenchmarkId::new("4f3_minus_one", name), |b| b.iter(|| flagship_sweep(exec, black_box(200))));
        let f = FieldCtx::new(199).unwrap();
        g.bench_function(BenchmarkId::new("iso_classes_199", name), |b| {
            b.iter(|| IsoClassTable::new(black_box(&f), exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, gauss_tables, sweeps);
criterion_main!(benches);
