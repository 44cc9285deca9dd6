use criterion::{black_box, criterion_group, criterion_main, Criterion};
use num_complex::Complex64;

use stirap_bench::{map_grid, reference_scenario};
use stirap_core::lambda::cpt_steady_state;
use stirap_core::localization::{population_at, stirap_population_map};
use stirap_core::{LambdaParams, SolverOptions};

fn lambda(c: &mut Criterion) {
    let s = reference_scenario();
    let opts = SolverOptions::default();
    // Off axis the pump dominates and sets the RK4 step.
    c.bench_function("population_at r=0.5w", |b| {
        b.iter(|| population_at(black_box(&s), (0.5, 0.0), &opts).unwrap())
    });
    let params = LambdaParams::resonant(1.0).unwrap();
    c.bench_function("cpt_steady_state", |b| {
        b.iter(|| cpt_steady_state(black_box(Complex64::new(3.0, 1.0)), Complex64::new(4.0, 0.0), &params).unwrap())
    });
    let grid = map_grid(21);
    let mut g = c.benchmark_group("maps");
    g.sample_size(10);
    g.bench_function("stirap_population_map 21x21", |b| {
        b.iter(|| stirap_population_map(black_box(&s), &grid, &opts).unwrap())
    });
    g.finish();
}

criterion_group!(benches, lambda);
criterion_main!(benches);
