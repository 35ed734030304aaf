use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use specker_core::cosmic::{infuturabilien_estimate, CosmicParams};
use specker_core::ks::{
    find_noncontextual_assignment, RaySystem, SearchConfig, SignConvention, Witness,
};
use specker_core::linalg::random_state;
use specker_core::parable::sequential_machine_sim;

fn ks(c: &mut Criterion) {
    let system = RaySystem::ceg18();
    let h = system.hypergraph();
    c.bench_function("ks_search_ceg18", |b| {
        b.iter(|| find_noncontextual_assignment(black_box(&h), &SearchConfig::default()).unwrap())
    });
    let w = Witness::new(&system, SignConvention::Negated);
    for workers in [1, 4] {
        c.bench_function(&format!("witness_bound_ceg18_w{workers}"), |b| {
            b.iter(|| {
                w.classical_bound(&SearchConfig::with_workers(workers))
                    .unwrap()
            })
        });
    }
    let psi = random_state(4, 1).unwrap();
    c.bench_function("witness_quantum_ceg18", |b| {
        b.iter(|| w.quantum_value(black_box(&psi)).unwrap())
    });
}

fn simulations(c: &mut Criterion) {
    c.bench_function("parable_machine_10k", |b| {
        b.iter(|| sequential_machine_sim(10_000, black_box(7)).unwrap())
    });
    c.bench_function("infuturabilien_rounded", |b| {
        b.iter(|| infuturabilien_estimate(black_box(&CosmicParams::rounded())).unwrap())
    });
}

criterion_group!(benches, ks, simulations);
criterion_main!(benches);
