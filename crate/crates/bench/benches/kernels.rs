use std::hint::black_box;

use coarse_core::covered_space::{build_nerve, UniformGrid, Window};
use coarse_core::decomposition::{modulation_norm, standard_gaussian, Grid, Sampler, StftLattice};
use coarse_core::groups::{ball, DiscreteHeisenberg, GeneratingSet, DEFAULT_ELEMENT_BUDGET};
use coarse_core::invariants::four_point_delta;
use coarse_core::DistanceMatrix;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn heisenberg_balls(c: &mut Criterion) {
    let g = DiscreteHeisenberg::new(1).unwrap();
    let gens = GeneratingSet::standard(&g);
    let mut group = c.benchmark_group("heisenberg_ball");
    for r in [8u32, 12, 16] {
        group.bench_with_input(BenchmarkId::from_parameter(r), &r, |b, &r| {
            b.iter(|| ball(&g, &gens, black_box(r), DEFAULT_ELEMENT_BUDGET).unwrap())
        });
    }
    group.finish();
}

fn four_point(c: &mut Criterion) {
    let mut group = c.benchmark_group("four_point_delta");
    group.sample_size(10);
    for n in [40usize, 80] {
        // points on a circle: delta grows with the radius
        let dm = DistanceMatrix::from_fn(n, |i, j| {
            let k = i.abs_diff(j);
            k.min(n - k) as f64
        });
        group.bench_with_input(BenchmarkId::from_parameter(n), &dm, |b, dm| {
            b.iter(|| four_point_delta(black_box(dm)).unwrap())
        });
    }
    group.finish();
}

fn nerve_construction(c: &mut Criterion) {
    let cover = UniformGrid::new(2).unwrap();
    c.bench_function("nerve_grid_box_16", |b| {
        b.iter(|| build_nerve(&cover, black_box(&Window::Box { radius: 16 })).unwrap())
    });
}

fn modulation(c: &mut Criterion) {
    let grid = Grid::symmetric(1, 6.0, 0.0625).unwrap();
    let f = standard_gaussian(1).sample(&grid);
    let lattice = StftLattice {
        stride: 2,
        max_shift: 6.0,
    };
    c.bench_function("modulation_norm_1d", |b| {
        b.iter(|| modulation_norm(black_box(&f), &f, &lattice, 2.0, 2.0).unwrap())
    });
}

criterion_group!(
    benches,
    heisenberg_balls,
    four_point,
    nerve_construction,
    modulation
);
criterion_main!(benches);
