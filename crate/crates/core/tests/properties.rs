use std::collections::BTreeSet;

use coarse_core::covered_space::{
    build_nerve, chain_distance, rational_point, DyadicAnnuli, UniformGrid, Window,
};
use coarse_core::decomposition::{Bapu, DyadicBapu, GridBapu, Order};
use coarse_core::embeddings::{fit_qi_parameters, MapSample};
use coarse_core::groups::{
    ball, DiscreteHeisenberg, FreeGroup, GeneratingSet, Group, Sl2z, DEFAULT_ELEMENT_BUDGET,
};
use coarse_core::DistanceMatrix;
use proptest::prelude::*;

fn words<G: Group>(g: &G, r: u32) -> BTreeSet<G::Elem> {
    let gens = GeneratingSet::standard(g);
    let mut level = vec![g.identity()];
    let mut all: BTreeSet<G::Elem> = level.iter().cloned().collect();
    for _ in 0..r {
        level = level
            .iter()
            .flat_map(|w| gens.elements().iter().map(|s| g.multiply(w, s)))
            .collect();
        all.extend(level.iter().cloned());
    }
    all
}

fn same_ball<G: Group>(g: &G, r: u32) {
    let b = ball(g, &GeneratingSet::standard(g), r, DEFAULT_ELEMENT_BUDGET).unwrap();
    let got: BTreeSet<G::Elem> = b.elements().iter().cloned().collect();
    assert_eq!(got, words(g, r), "{} r={r}", g.name());
}

#[test]
fn balls_are_sets_of_short_words() {
    for r in 0..=4 {
        same_ball(&DiscreteHeisenberg::new(1).unwrap(), r);
        same_ball(&FreeGroup::new(2).unwrap(), r);
        same_ball(&Sl2z, r);
    }
}

fn grid_point() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-24i64..=24, 2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn chain_metric_on_the_plane_is_a_metric(x in grid_point(), y in grid_point(), z in grid_point()) {
        let cover = UniformGrid::new(2).unwrap();
        let nerve = build_nerve(&cover, &Window::Box { radius: 8 }).unwrap();
        let p: Vec<_> = [x, y, z].iter().map(|v| rational_point(v, 4)).collect();
        let d = |a: usize, b: usize| chain_distance(&cover, &nerve, &p[a], &p[b]).unwrap();
        prop_assert_eq!(d(0, 1), d(1, 0));
        prop_assert!(d(0, 2) <= d(0, 1) + d(1, 2));
        prop_assert_eq!(d(0, 1) == 0, p[0] == p[1]);
    }

    #[test]
    fn dyadic_chain_distance_tracks_levels(a in 0u32..12, b in 0u32..12) {
        let cover = DyadicAnnuli::new(1, 1).unwrap();
        let nerve = build_nerve(&cover, &Window::Range { lo: 0, hi: 16 }).unwrap();
        let x = cover.dyadic_point(a);
        let y = cover.dyadic_point(b);
        let d = chain_distance(&cover, &nerve, &x, &y).unwrap() as i64;
        let gap = (a as i64 - b as i64).abs();
        // each annulus spans two levels
        prop_assert!(d <= gap / 2 + 2);
        prop_assert!(d >= (gap + 1) / 2);
    }

    #[test]
    fn partitions_sum_to_one(x in -50.0f64..50.0, y in -50.0f64..50.0) {
        let p = [x, y];
        let grid = GridBapu::new(2, Order::Two).unwrap();
        let s: f64 = grid.indices_meeting(&p, &p).iter().map(|i| grid.eval(i, &p)).sum();
        prop_assert!((s - 1.0).abs() <= 1e-12);
        let dy = DyadicBapu::new(2, 1, 0.25, Order::One).unwrap();
        let s: f64 = dy.indices_meeting(&p, &p).iter().map(|i| dy.eval(i, &p)).sum();
        prop_assert!((s - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn affine_maps_fit_their_own_parameters(scale in 1u32..5, shift in 0u32..3) {
        let n = 12;
        let source = DistanceMatrix::from_fn(n, |i, j| (i as f64 - j as f64).abs());
        let target = DistanceMatrix::from_fn(n, |i, j| {
            scale as f64 * (i as f64 - j as f64).abs() + shift as f64
        });
        let labels = (0..n).map(|i| i.to_string()).collect();
        let sample = MapSample::new(labels, source, target).unwrap();
        let w = fit_qi_parameters(&sample, 8.0, 8.0).unwrap();
        prop_assert!(w.feasible);
        prop_assert!(w.l <= scale as f64);
        prop_assert!(sample.required_c(scale as f64) <= shift as f64 + 1e-9);
    }
}
