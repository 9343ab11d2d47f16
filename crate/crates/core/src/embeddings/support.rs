//! Adapted supports and the sampled geometric-embedding condition.
//!
//! The condition is checked on pairs of test functions `(f, g)` through
//! the nerve distances between adapted supports: the nearest and the
//! farthest pair of support indices on the source side are compared with
//! the nearest and farthest pair on the target side. Each comparison must
//! satisfy `d / L - C <= d' <= L d + C`.

use serde::{Deserialize, Serialize};

use super::qi::{PairViolation, QiWitness};
use super::EmbeddingError;
use crate::covered_space::{set_distances, NerveGraph};
use crate::decomposition::{decomposition_norm, Bapu, GlobalNorm, NormMode, SampledFunction};

/// Relative threshold below which a local norm counts as zero.
pub const DEFAULT_SUPPORT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct AdaptedSupport<I> {
    pub indices: Vec<I>,
    /// Absolute cut-off actually used.
    pub threshold: f64,
    pub largest_local_norm: f64,
}

/// `{ i : ||f phi_i|| > tol * max_j ||f phi_j|| }`.
pub fn adapted_support<B: Bapu>(
    f: &SampledFunction,
    bapu: &B,
    p: f64,
    mode: NormMode,
    tol: f64,
) -> Result<AdaptedSupport<B::Index>, EmbeddingError> {
    if tol.is_nan() || tol < 0.0 {
        return Err(EmbeddingError::InvalidInput(format!(
            "tolerance {tol} is negative"
        )));
    }
    let grid = f.grid();
    let indices = bapu.indices_meeting(grid.lo(), &grid.hi());
    let result = decomposition_norm(f, bapu, p, mode, &GlobalNorm::unweighted(1.0))?;
    let largest = result
        .local_norms
        .iter()
        .map(|l| l.value)
        .fold(0.0, f64::max);
    let threshold = tol * largest;
    let kept = indices
        .into_iter()
        .zip(&result.local_norms)
        .filter(|(_, l)| l.value > threshold)
        .map(|(i, _)| i)
        .collect();
    Ok(AdaptedSupport {
        indices: kept,
        threshold,
        largest_local_norm: largest,
    })
}

/// One side of an embedding: partition, windowed nerve and local norm.
pub struct SupportSpace<'a, B: Bapu> {
    pub bapu: &'a B,
    pub nerve: &'a NerveGraph<B::Index>,
    pub p: f64,
    pub mode: NormMode,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupportRecord {
    pub source: Vec<String>,
    pub target: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingReport {
    pub condition_holds: bool,
    pub witness: QiWitness,
    pub supports: Vec<SupportRecord>,
    pub source_bapu: String,
    pub target_bapu: String,
    /// Smallest slack in `d / L - C <= d'`.
    pub worst_lower_margin: f64,
    /// Smallest slack in `d' <= L d + C`.
    pub worst_upper_margin: f64,
    pub scope: String,
}

fn names<I: ToString>(v: &[I]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

/// Checks the geometric condition with parameters `(l, c)` for `map` on
/// every pair of `tests`.
pub fn geometric_condition_check<B1: Bapu, B2: Bapu>(
    tests: &[SampledFunction],
    map: impl Fn(&SampledFunction) -> Result<SampledFunction, EmbeddingError>,
    source: &SupportSpace<B1>,
    target: &SupportSpace<B2>,
    l: f64,
    c: f64,
    tol: f64,
) -> Result<EmbeddingReport, EmbeddingError> {
    if tests.len() < 2 {
        return Err(EmbeddingError::TooFewPairs(tests.len()));
    }
    if !(l >= 1.0 && c >= 0.0) {
        return Err(EmbeddingError::InvalidInput(format!("(L, C) = ({l}, {c})")));
    }
    let mut src = Vec::with_capacity(tests.len());
    let mut tgt = Vec::with_capacity(tests.len());
    for (k, f) in tests.iter().enumerate() {
        let s = adapted_support(f, source.bapu, source.p, source.mode, tol)?;
        if s.indices.is_empty() {
            return Err(EmbeddingError::InvalidInput(format!(
                "test function {k} is zero"
            )));
        }
        let t = adapted_support(&map(f)?, target.bapu, target.p, target.mode, tol)?;
        if t.indices.is_empty() {
            return Err(EmbeddingError::EmptySupport(k));
        }
        src.push(s.indices);
        tgt.push(t.indices);
    }

    let mut lower = f64::INFINITY;
    let mut upper = f64::INFINITY;
    let mut violations = Vec::new();
    for a in 0..tests.len() {
        for b in a + 1..tests.len() {
            let (smin, smax) = set_distances(source.nerve, &src[a], &src[b])?;
            let (tmin, tmax) = set_distances(target.nerve, &tgt[a], &tgt[b])?;
            for (dx, dz) in [(smin as f64, tmin as f64), (smax as f64, tmax as f64)] {
                let lo = dz - (dx / l - c);
                let hi = l * dx + c - dz;
                lower = lower.min(lo);
                upper = upper.min(hi);
                if lo < 0.0 || hi < 0.0 {
                    violations.push(PairViolation {
                        a: format!("test {a}"),
                        b: format!("test {b}"),
                        source_distance: dx,
                        target_distance: dz,
                        excess: -lo.min(hi),
                    });
                }
            }
        }
    }
    violations.sort_by(|x, y| y.excess.total_cmp(&x.excess));
    let holds = violations.is_empty();
    let pairs = tests.len() * (tests.len() - 1) / 2;
    Ok(EmbeddingReport {
        condition_holds: holds,
        witness: QiWitness {
            l,
            c,
            feasible: holds,
            violations,
            l_max: l,
            c_max: c,
            pairs_checked: pairs,
        },
        supports: src
            .iter()
            .zip(&tgt)
            .map(|(s, t)| SupportRecord {
                source: names(s),
                target: names(t),
            })
            .collect(),
        source_bapu: source.bapu.describe(),
        target_bapu: target.bapu.describe(),
        worst_lower_margin: lower,
        worst_upper_margin: upper,
        scope: format!(
            "sampled verification on {} test functions ({pairs} pairs); not a proof",
            tests.len()
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covered_space::{build_nerve, LatticeIndex, UniformGrid, Window};
    use crate::decomposition::{Grid, GridBapu, Order, Preset, Sampler};

    fn bump_at(grid: &Grid, centre: f64, radius: f64) -> SampledFunction {
        Preset::Bump {
            dim: 1,
            center: Some(vec![centre]),
            radius,
        }
        .sample(grid)
    }

    fn line() -> (GridBapu, NerveGraph<LatticeIndex>, Grid) {
        let bapu = GridBapu::new(1, Order::One).unwrap();
        let nerve =
            build_nerve(&UniformGrid::new(1).unwrap(), &Window::Box { radius: 20 }).unwrap();
        (
            bapu,
            nerve,
            Grid::from_box(&[-16.0], &[16.0], 1.0 / 32.0).unwrap(),
        )
    }

    #[test]
    fn support_of_a_cell_localised_function() {
        let (bapu, _, grid) = line();
        // supported in the open cell (3, 4): only the hats at 3 and 4 see it
        let f = bump_at(&grid, 3.5, 0.5);
        let s = adapted_support(&f, &bapu, 1.0, NormMode::Lp, DEFAULT_SUPPORT_TOL).unwrap();
        let found: Vec<i64> = s.indices.iter().map(|i| i.0[0]).collect();
        assert_eq!(found, vec![3, 4]);
        let zero = SampledFunction::zeros(grid);
        assert!(adapted_support(&zero, &bapu, 1.0, NormMode::Lp, 0.0)
            .unwrap()
            .indices
            .is_empty());
    }

    #[test]
    fn clustered_partition_lives_in_the_double_star() {
        // f_i = sum_{j in i*} phi_j
        let (bapu, _, grid) = line();
        let i = LatticeIndex::new(&[2]);
        let star = bapu.neighbours(&i);
        let f = SampledFunction::real(grid, |x| star.iter().map(|j| bapu.eval(j, x)).sum());
        let s = adapted_support(&f, &bapu, 1.0, NormMode::Lp, DEFAULT_SUPPORT_TOL).unwrap();
        let double: Vec<LatticeIndex> = star.iter().flat_map(|j| bapu.neighbours(j)).collect();
        assert!(!s.indices.is_empty());
        assert!(s.indices.iter().all(|k| double.contains(k)));
    }

    #[test]
    fn support_is_monotone_in_the_tolerance() {
        let (bapu, _, grid) = line();
        let f = standard_gaussian_1d(&grid);
        let mut last = usize::MAX;
        for tol in [0.0, 1e-12, 1e-8, 1e-4, 1e-1] {
            let n = adapted_support(&f, &bapu, 2.0, NormMode::Lp, tol)
                .unwrap()
                .indices
                .len();
            assert!(n <= last);
            last = n;
        }
    }

    fn standard_gaussian_1d(grid: &Grid) -> SampledFunction {
        crate::decomposition::standard_gaussian(1).sample(grid)
    }

    #[test]
    fn identity_satisfies_the_condition() {
        let (bapu, nerve, grid) = line();
        let space = SupportSpace {
            bapu: &bapu,
            nerve: &nerve,
            p: 1.0,
            mode: NormMode::Lp,
        };
        let tests: Vec<_> = [-9.5, -3.5, 0.5, 6.5, 12.5]
            .iter()
            .map(|&c| bump_at(&grid, c, 0.5))
            .collect();
        let r = geometric_condition_check(
            &tests,
            |f| Ok(f.clone()),
            &space,
            &space,
            1.0,
            1.0,
            DEFAULT_SUPPORT_TOL,
        )
        .unwrap();
        assert!(r.condition_holds && r.witness.feasible);
        assert!(r.scope.contains("sampled"));
    }

    #[test]
    fn collapsing_map_fails() {
        let (bapu, nerve, grid) = line();
        let space = SupportSpace {
            bapu: &bapu,
            nerve: &nerve,
            p: 1.0,
            mode: NormMode::Lp,
        };
        let tests: Vec<_> = [-12.5, -0.5, 12.5]
            .iter()
            .map(|&c| bump_at(&grid, c, 0.5))
            .collect();
        let target = bump_at(&grid, 0.5, 0.5);
        let r = geometric_condition_check(
            &tests,
            |_| Ok(target.clone()),
            &space,
            &space,
            2.0,
            2.0,
            DEFAULT_SUPPORT_TOL,
        )
        .unwrap();
        assert!(!r.condition_holds);
        assert!(r.worst_lower_margin < 0.0);
        let zero = SampledFunction::zeros(grid);
        let err = geometric_condition_check(
            &tests,
            |_| Ok(zero.clone()),
            &space,
            &space,
            2.0,
            2.0,
            DEFAULT_SUPPORT_TOL,
        );
        assert_eq!(err.unwrap_err(), EmbeddingError::EmptySupport(0));
    }
}
