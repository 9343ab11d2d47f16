//! Four-point Gromov hyperbolicity of finite metric samples.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{linear_fit, InvariantError};
use crate::groups::{ball, GeneratingSet, Group, GroupError};
use crate::metric::DistanceMatrix;

/// Slope of `delta(r)` above which the trend is reported as growing.
pub const TREND_SLOPE_THRESHOLD: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeltaOptions {
    /// Samples up to this size are scanned exhaustively.
    pub exhaustive_limit: usize,
    /// Number of random quadruples above the limit.
    pub samples: usize,
    pub seed: u64,
}

impl Default for DeltaOptions {
    fn default() -> Self {
        Self {
            exhaustive_limit: 400,
            samples: 200_000,
            seed: 0x5eed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeltaEstimate {
    pub delta: f64,
    pub quadruples: u64,
    pub exhaustive: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Trend {
    Bounded { delta_max: f64 },
    Growing { slope: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HyperbolicityProfile {
    pub source: String,
    pub radii: Vec<u32>,
    pub delta: Vec<f64>,
    pub sample_sizes: Vec<usize>,
    pub quadruples: Vec<u64>,
    pub exhaustive: Vec<bool>,
    pub trend: Trend,
    pub seed: u64,
}

#[inline]
fn quad_defect(dm: &DistanceMatrix, x: usize, y: usize, z: usize, w: usize) -> f64 {
    let s1 = dm.get(x, y) + dm.get(z, w);
    let s2 = dm.get(x, z) + dm.get(y, w);
    let s3 = dm.get(x, w) + dm.get(y, z);
    let (hi, mid) = if s1 >= s2 {
        if s2 >= s3 {
            (s1, s2)
        } else if s1 >= s3 {
            (s1, s3)
        } else {
            (s3, s1)
        }
    } else if s1 >= s3 {
        (s2, s1)
    } else if s2 >= s3 {
        (s2, s3)
    } else {
        (s3, s2)
    };
    0.5 * (hi - mid)
}

/// Four-point `delta` with default options.
pub fn four_point_delta(dm: &DistanceMatrix) -> Result<f64, InvariantError> {
    Ok(four_point_delta_with(dm, &DeltaOptions::default())?.delta)
}

/// `delta = max (L1 - L2) / 2` over quadruples, where `L1 >= L2` are the two
/// largest of the three pair sums. This equals the maximal defect
/// `min((x|z)_w, (z|y)_w) - (x|y)_w` of the Gromov product.
pub fn four_point_delta_with(
    dm: &DistanceMatrix,
    opts: &DeltaOptions,
) -> Result<DeltaEstimate, InvariantError> {
    dm.check_metric()?;
    let n = dm.len();
    if n < 4 {
        return Ok(DeltaEstimate {
            delta: 0.0,
            quadruples: 0,
            exhaustive: true,
        });
    }
    if n <= opts.exhaustive_limit {
        let delta = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut best = 0.0f64;
                for j in i + 1..n {
                    for k in j + 1..n {
                        for l in k + 1..n {
                            best = best.max(quad_defect(dm, i, j, k, l));
                        }
                    }
                }
                best
            })
            .reduce(|| 0.0, f64::max);
        let n64 = n as u64;
        return Ok(DeltaEstimate {
            delta,
            quadruples: n64 * (n64 - 1) * (n64 - 2) * (n64 - 3) / 24,
            exhaustive: true,
        });
    }
    const CHUNK: usize = 10_000;
    let chunks = opts.samples.div_ceil(CHUNK);
    let delta = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            rng.set_stream(c as u64);
            let count = CHUNK.min(opts.samples - c * CHUNK);
            let mut best = 0.0f64;
            for _ in 0..count {
                let mut q = [0usize; 4];
                let mut filled = 0;
                while filled < 4 {
                    let v = rng.random_range(0..n);
                    if !q[..filled].contains(&v) {
                        q[filled] = v;
                        filled += 1;
                    }
                }
                best = best.max(quad_defect(dm, q[0], q[1], q[2], q[3]));
            }
            best
        })
        .reduce(|| 0.0, f64::max);
    Ok(DeltaEstimate {
        delta,
        quadruples: opts.samples as u64,
        exhaustive: false,
    })
}

fn trend_of(radii: &[u32], delta: &[f64]) -> Trend {
    let take = radii.len().div_ceil(2).max(2).min(radii.len());
    let xs: Vec<f64> = radii[radii.len() - take..]
        .iter()
        .map(|&r| r as f64)
        .collect();
    let ys = &delta[delta.len() - take..];
    let slope = if take >= 2 {
        linear_fit(&xs, ys).1
    } else {
        0.0
    };
    if slope > TREND_SLOPE_THRESHOLD {
        Trend::Growing { slope }
    } else {
        Trend::Bounded {
            delta_max: delta.iter().copied().fold(0.0, f64::max),
        }
    }
}

/// `delta(r)` on the word-metric balls `B(r)`.
pub fn hyperbolicity_trend<G: Group>(
    group: &G,
    gens: &GeneratingSet<G::Elem>,
    radii: &[u32],
    opts: &DeltaOptions,
    budget: usize,
) -> Result<HyperbolicityProfile, InvariantError> {
    if radii.is_empty() || radii.windows(2).any(|w| w[0] >= w[1]) {
        return Err(InvariantError::InvalidInput(
            "radii must be non-empty and strictly ascending".into(),
        ));
    }
    let r_max = *radii.last().unwrap();
    let (big, usable) = match ball(group, gens, 2 * r_max, budget) {
        Ok(b) => (b, radii.to_vec()),
        Err(GroupError::ResourceLimit {
            achieved_radius, ..
        }) => {
            let usable: Vec<u32> = radii
                .iter()
                .copied()
                .filter(|&r| 2 * r <= achieved_radius)
                .collect();
            let b = ball(group, gens, achieved_radius, budget)?;
            (b, usable)
        }
        Err(e) => return Err(e.into()),
    };
    let mut profile = HyperbolicityProfile {
        source: format!("{} word metric", group.name()),
        radii: Vec::new(),
        delta: Vec::new(),
        sample_sizes: Vec::new(),
        quadruples: Vec::new(),
        exhaustive: Vec::new(),
        trend: Trend::Bounded { delta_max: 0.0 },
        seed: opts.seed,
    };
    for &r in &usable {
        let sample: Vec<&G::Elem> = big
            .elements()
            .iter()
            .take_while(|g| big.lengths().get(g).is_some_and(|l| l <= r))
            .collect();
        let inverses: Vec<G::Elem> = sample.iter().map(|g| group.inverse(g)).collect();
        let dm = DistanceMatrix::from_fn(sample.len(), |i, j| {
            let d = group.multiply(&inverses[i], sample[j]);
            big.lengths().get(&d).map_or(f64::INFINITY, f64::from)
        });
        let est = four_point_delta_with(&dm, opts)?;
        profile.radii.push(r);
        profile.delta.push(est.delta);
        profile.sample_sizes.push(sample.len());
        profile.quadruples.push(est.quadruples);
        profile.exhaustive.push(est.exhaustive);
    }
    if !profile.radii.is_empty() {
        profile.trend = trend_of(&profile.radii, &profile.delta);
    }
    if usable.len() < radii.len() {
        return Err(InvariantError::ResourceLimit {
            partial: Box::new(profile),
        });
    }
    Ok(profile)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{FreeAbelian, FreeGroup, DEFAULT_ELEMENT_BUDGET};

    /// Gromov-product form of the defect, maximised over all orderings.
    fn gromov_oracle(dm: &DistanceMatrix) -> f64 {
        let n = dm.len();
        let gp = |a: usize, b: usize, w: usize| 0.5 * (dm.get(a, w) + dm.get(b, w) - dm.get(a, b));
        let mut best: f64 = 0.0;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for w in 0..n {
                        best = best.max(gp(x, z, w).min(gp(z, y, w)) - gp(x, y, w));
                    }
                }
            }
        }
        best
    }

    fn l1_sample(points: &[(i64, i64)]) -> DistanceMatrix {
        DistanceMatrix::from_fn(points.len(), |i, j| {
            ((points[i].0 - points[j].0).abs() + (points[i].1 - points[j].1).abs()) as f64
        })
    }

    #[test]
    fn line_and_tree_are_zero_hyperbolic() {
        let line = DistanceMatrix::from_fn(11, |i, j| (i as f64 - j as f64).abs());
        assert_eq!(four_point_delta(&line).unwrap(), 0.0);

        let f = FreeGroup::new(2).unwrap();
        let gens = GeneratingSet::standard(&f);
        let p = hyperbolicity_trend(
            &f,
            &gens,
            &[4],
            &DeltaOptions::default(),
            DEFAULT_ELEMENT_BUDGET,
        )
        .unwrap();
        assert_eq!(p.delta, vec![0.0]);
    }

    #[test]
    fn square_corners() {
        let r = 10;
        let dm = l1_sample(&[(0, 0), (r, 0), (0, r), (r, r)]);
        let d = four_point_delta(&dm).unwrap();
        assert!(d >= r as f64 / 2.0);
        assert_eq!(d, gromov_oracle(&dm));
    }

    #[test]
    fn matches_gromov_product_oracle() {
        let pts: Vec<(i64, i64)> = (0..9).map(|k| ((k * 7) % 5, (k * 3) % 4)).collect();
        let dm = l1_sample(&pts);
        assert_eq!(four_point_delta(&dm).unwrap(), gromov_oracle(&dm));
    }

    #[test]
    fn non_metric_rejected() {
        let dm = DistanceMatrix::new(3, vec![0.0, 1.0, 5.0, 1.0, 0.0, 1.0, 5.0, 1.0, 0.0]).unwrap();
        assert!(matches!(
            four_point_delta(&dm),
            Err(InvariantError::NotAMetric(_))
        ));
    }

    #[test]
    fn sampled_mode_is_deterministic_and_bounded_by_exhaustive() {
        let pts: Vec<(i64, i64)> = (0..30).map(|k| (k % 6, k / 6)).collect();
        let dm = l1_sample(&pts);
        let full = four_point_delta(&dm).unwrap();
        let opts = DeltaOptions {
            exhaustive_limit: 10,
            samples: 5_000,
            seed: 3,
        };
        let a = four_point_delta_with(&dm, &opts).unwrap();
        let b = four_point_delta_with(&dm, &opts).unwrap();
        assert_eq!(a, b);
        assert!(!a.exhaustive && a.delta <= full);
    }

    #[test]
    fn integer_line_trend_is_bounded() {
        let z = FreeAbelian::new(1).unwrap();
        let gens = GeneratingSet::standard(&z);
        let radii: Vec<u32> = (2..=20).collect();
        let p = hyperbolicity_trend(
            &z,
            &gens,
            &radii,
            &DeltaOptions::default(),
            DEFAULT_ELEMENT_BUDGET,
        )
        .unwrap();
        assert!(p.delta.iter().all(|&d| d == 0.0));
        assert_eq!(p.trend, Trend::Bounded { delta_max: 0.0 });
    }

    #[test]
    fn budget_gives_partial_profile() {
        let f = FreeGroup::new(2).unwrap();
        let gens = GeneratingSet::standard(&f);
        match hyperbolicity_trend(&f, &gens, &[1, 2, 6], &DeltaOptions::default(), 500) {
            Err(InvariantError::ResourceLimit { partial }) => assert_eq!(partial.radii, vec![1, 2]),
            other => panic!("{other:?}"),
        }
    }
}
