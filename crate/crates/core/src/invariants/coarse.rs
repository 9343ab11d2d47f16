//! Coarse connectedness, end counts of windowed nerves, and the brick
//! covering used to bound asymptotic dimension at a finite scale.

use std::collections::HashSet;

use serde::Serialize;

use super::InvariantError;
use crate::covered_space::NerveGraph;
use crate::metric::DistanceMatrix;

/// True iff the graph joining points at distance `<= c` is connected.
pub fn coarse_connected(dm: &DistanceMatrix, c: f64) -> Result<bool, InvariantError> {
    dm.check_metric()?;
    let n = dm.len();
    if n == 0 {
        return Ok(true);
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for (w, s) in seen.iter_mut().enumerate() {
            if !*s && dm.get(v, w) <= c {
                *s = true;
                stack.push(w);
            }
        }
    }
    Ok(seen.into_iter().all(|b| b))
}

/// Number of components of the windowed nerve outside the ball of radius
/// `r` around `base` that reach the window boundary. A heuristic for the
/// number of ends; it is reported as evidence only.
pub fn estimate_ends<I>(nerve: &NerveGraph<I>, base: &I, r: u32) -> Option<usize>
where
    I: Clone + Eq + std::hash::Hash + std::fmt::Display,
{
    let start = nerve.position(base)?;
    let dist = nerve.bfs_from(&[start]);
    let outside: Vec<usize> = (0..nerve.len())
        .filter(|&v| dist[v] != u32::MAX && dist[v] > r)
        .collect();
    let outside_set: HashSet<usize> = outside.iter().copied().collect();
    let mut seen = HashSet::new();
    let mut ends = 0;
    for &v in &outside {
        if !seen.insert(v) {
            continue;
        }
        let mut stack = vec![v];
        let mut reaches_boundary = false;
        while let Some(u) = stack.pop() {
            reaches_boundary |= !nerve.is_interior(u);
            for &w in nerve.adjacent(u) {
                if outside_set.contains(&w) && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        if reaches_boundary {
            ends += 1;
        }
    }
    Some(ends)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoxMultiplicity {
    pub dim: usize,
    pub scale: i64,
    pub brick: i64,
    pub window_side: i64,
    pub multiplicity: usize,
    pub asdim_upper_bound: usize,
}

/// Brick containing `x`. Bricks are `D`-cubes; along coordinate `j` they are
/// shifted by `((sum_{l>j} i_l) mod k) * (D / k)`, a staircase that keeps any
/// small ball from meeting more than `k + 1` of them.
fn brick_of(x: &[i64], brick: i64) -> Vec<i64> {
    let k = x.len();
    let step = brick / k as i64;
    let mut idx = vec![0i64; k];
    let mut later_sum = 0i64;
    for j in (0..k).rev() {
        let offset = later_sum.rem_euclid(k as i64) * step;
        idx[j] = (x[j] - offset).div_euclid(brick);
        later_sum += idx[j];
    }
    idx
}

/// Staircase probe on the window `[0, 4D)^k`.
pub fn box_multiplicity_probe(k: usize, r: i64, d: i64) -> Result<BoxMultiplicity, InvariantError> {
    box_multiplicity_probe_window(k, r, d, 4 * d)
}

/// Largest number of bricks met by a sup-norm `R`-ball centred in the window
/// `[0, W)^k`, with balls clipped to the window.
pub fn box_multiplicity_probe_window(
    k: usize,
    r: i64,
    d: i64,
    w: i64,
) -> Result<BoxMultiplicity, InvariantError> {
    if k == 0 || r < 0 || d <= 2 * r || w <= 0 {
        return Err(InvariantError::InvalidInput(format!(
            "need k >= 1, R >= 0, D > 2R and W > 0 (k={k}, R={r}, D={d}, W={w})"
        )));
    }
    let points = grid_points(k, 0, w - 1);
    let offsets = grid_points(k, -r, r);
    let mut best = 0;
    for c in &points {
        let mut bricks = HashSet::new();
        for o in &offsets {
            let p: Vec<i64> = c.iter().zip(o).map(|(a, b)| a + b).collect();
            if p.iter().all(|&t| (0..w).contains(&t)) {
                bricks.insert(brick_of(&p, d));
            }
        }
        best = best.max(bricks.len());
    }
    Ok(BoxMultiplicity {
        dim: k,
        scale: r,
        brick: d,
        window_side: w,
        multiplicity: best,
        asdim_upper_bound: best.saturating_sub(1),
    })
}

fn grid_points(k: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|p| {
                (lo..=hi).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn max_metric_on_naturals_is_not_coarsely_connected() {
        let dm = DistanceMatrix::from_fn(41, |i, j| i.max(j) as f64);
        assert!(!coarse_connected(&dm, 20.0).unwrap());
        let line = DistanceMatrix::from_fn(21, |i, j| (i as f64 - j as f64).abs());
        assert!(coarse_connected(&line, 1.0).unwrap());
    }

    #[test]
    fn probe_values() {
        assert_eq!(box_multiplicity_probe(1, 2, 10).unwrap().multiplicity, 2);
        let two = box_multiplicity_probe(2, 2, 12).unwrap();
        assert_eq!(two.multiplicity, 3);
        assert_eq!(two.asdim_upper_bound, 2);
        assert_eq!(
            box_multiplicity_probe_window(2, 2, 12, 12)
                .unwrap()
                .multiplicity,
            1
        );
        assert!(box_multiplicity_probe(1, 5, 10).is_err());
    }

    #[test]
    fn bricks_partition_the_window() {
        // Every point gets exactly one brick, and bricks are D-cubes.
        let d = 6;
        let mut counts = std::collections::HashMap::new();
        for p in grid_points(2, 0, 4 * d - 1) {
            *counts.entry(brick_of(&p, d)).or_insert(0usize) += 1;
        }
        assert!(counts.values().all(|&c| c <= (d * d) as usize));
    }
}
