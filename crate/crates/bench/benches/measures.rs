use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use qcorr_bench::{fixture_mixed, fixture_pair, fixture_pure};
use qcorr::tomography::Reconstructor;
use qcorr::{
    concurrence, conditional_entropy_two, genuine_discord, simulate_counts, three_tangle_ckw,
    DiscordOptions,
};

fn entanglement_benches(c: &mut Criterion) {
    let pair = fixture_pair();
    c.bench_function("concurrence/4x4 mixed", |b| {
        b.iter(|| concurrence(black_box(&pair)).unwrap())
    });

    let psi = fixture_pure();
    c.bench_function("three_tangle_ckw/haar pure", |b| {
        b.iter(|| three_tangle_ckw(black_box(&psi)).unwrap())
    });
}

fn discord_benches(c: &mut Criterion) {
    let rho = fixture_mixed();
    let coarse = DiscordOptions { grid: 8, ..Default::default() };
    c.bench_function("conditional_entropy_two/grid8", |b| {
        b.iter(|| conditional_entropy_two(black_box(&rho), (0, 1), 2, &coarse).unwrap())
    });
    let mut group = c.benchmark_group("genuine_discord");
    group.sample_size(10);
    group.bench_function("grid8 full stack", |b| {
        b.iter(|| genuine_discord(black_box(&rho), &coarse).unwrap())
    });
    group.finish();
}

fn tomography_benches(c: &mut Criterion) {
    let rho = fixture_pure().density();
    let records = simulate_counts(&rho, 10_000, 3).unwrap();
    let reconstructor = Reconstructor::new();
    c.bench_function("reconstruct/64 settings", |b| {
        b.iter(|| reconstructor.reconstruct(black_box(&records)).unwrap())
    });
    c.bench_function("simulate_counts/N0=1e4", |b| {
        b.iter(|| simulate_counts(black_box(&rho), 10_000, 3).unwrap())
    });
}

criterion_group!(benches, entanglement_benches, discord_benches, tomography_benches);
criterion_main!(benches);
