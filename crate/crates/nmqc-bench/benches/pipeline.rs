use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use nmqc::{
    decide_feasibility, functional_from_game, make_family, quantum_bound, synthesize_protocol,
    FamilyKind, FamilySpec, Gf2Matrix, PriorDistribution, QuantumOptions,
};
use nmqc_bench::scrambled_table;

fn bench_walsh(c: &mut Criterion) {
    let mut group = c.benchmark_group("walsh_spectrum");
    for n in [8usize, 10, 12] {
        let f = scrambled_table(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &f, |b, f| {
            b.iter(|| f.walsh_spectrum())
        });
    }
    group.finish();
}

fn bench_synthesis(c: &mut Criterion) {
    let mut group = c.benchmark_group("synthesize_protocol");
    for n in [6usize, 8, 10] {
        let f = scrambled_table(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &f, |b, f| {
            b.iter(|| synthesize_protocol(f))
        });
    }
    group.finish();
}

fn bench_feasibility(c: &mut Criterion) {
    let mut group = c.benchmark_group("decide_feasibility");
    for n in [3usize, 4, 5] {
        let f = make_family(FamilySpec { kind: FamilyKind::G, n }).unwrap();
        let all = Gf2Matrix::from_row_masks((1..(1u64 << n)).collect(), n);
        group.bench_with_input(BenchmarkId::new("g_full", n), &(f, all), |b, (f, p)| {
            b.iter(|| decide_feasibility(f, p).unwrap())
        });
    }
    group.finish();
}

fn bench_bounds(c: &mut Criterion) {
    let mut group = c.benchmark_group("bounds");
    group.sample_size(10);
    for n in [4usize, 6] {
        let f = make_family(FamilySpec { kind: FamilyKind::H, n }).unwrap();
        let bf = functional_from_game(&f, &PriorDistribution::uniform(n)).unwrap();
        group.bench_with_input(BenchmarkId::new("classical_h", n), &bf, |b, bf| {
            b.iter(|| nmqc::classical_bound(bf))
        });
        let mut opts = QuantumOptions::for_arity(n);
        opts.restarts = 20;
        group.bench_with_input(BenchmarkId::new("quantum_h", n), &(bf, opts), |b, (bf, opts)| {
            b.iter(|| quantum_bound(bf, opts))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_walsh, bench_synthesis, bench_feasibility, bench_bounds);
criterion_main!(benches);
