//! Local norms, weighted sequence norms and the clustering map.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bapu::Bapu;
use super::fourier::CftPlan;
use super::grid::{Grid, SampledFunction};
use super::presets::Sampler;
use super::{check_exponent, NormError, NormMode};
use crate::covered_space::NerveGraph;

/// Entry weights of the global sequence norm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Weight {
    Unit,
    /// `w_m = 2^{m s}` on dyadic levels.
    Dyadic {
        s: f64,
    },
}

/// Weighted `l^q` norm applied to the local values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GlobalNorm {
    pub q: f64,
    pub weight: Weight,
}

impl GlobalNorm {
    pub fn unweighted(q: f64) -> Self {
        Self {
            q,
            weight: Weight::Unit,
        }
    }

    pub fn dyadic(q: f64, s: f64) -> Self {
        Self {
            q,
            weight: Weight::Dyadic { s },
        }
    }

    fn weight_of(&self, level: Option<u32>) -> Result<f64, NormError> {
        match self.weight {
            Weight::Unit => Ok(1.0),
            Weight::Dyadic { s } => level.map(|m| (m as f64 * s).exp2()).ok_or_else(|| {
                NormError::InvalidInput("dyadic weight on a non-dyadic partition".into())
            }),
        }
    }

    /// `(sum_i (w_i a_i)^q)^{1/q}`.
    pub fn combine(&self, weighted: &[(f64, f64)]) -> f64 {
        weighted
            .iter()
            .map(|&(w, a)| (w * a).powf(self.q))
            .sum::<f64>()
            .powf(1.0 / self.q)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocalNorm {
    pub index: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormMetadata {
    pub bapu: String,
    pub p: f64,
    pub q: f64,
    pub mode: NormMode,
    pub weight: Weight,
    pub scheme: String,
    pub h: Vec<f64>,
    pub box_lo: Vec<f64>,
    pub box_hi: Vec<f64>,
    pub refinement_change: Option<f64>,
    pub tolerance: Option<f64>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormResult {
    pub local_norms: Vec<LocalNorm>,
    pub global: f64,
    pub metadata: NormMetadata,
}

/// Midpoint `L^p` norm of `f * phi_i`, restricted to the support box.
fn local_lp<B: Bapu>(f: &SampledFunction, bapu: &B, i: &B::Index, p: f64) -> f64 {
    let grid = f.grid();
    let (lo, hi) = bapu.support_box(i);
    let ranges: Vec<(usize, usize)> = (0..grid.dim())
        .map(|ax| grid.range_in(ax, lo[ax], hi[ax]))
        .collect();
    if ranges.iter().any(|&(a, b)| a >= b) {
        return 0.0;
    }
    let counts = grid.counts();
    let dim = grid.dim();
    let mut idx: Vec<usize> = ranges.iter().map(|r| r.0).collect();
    let mut x = vec![0.0; dim];
    let mut sum = 0.0;
    'outer: loop {
        let mut flat = 0;
        for ax in 0..dim {
            flat = flat * counts[ax] + idx[ax];
            x[ax] = grid.coord(ax, idx[ax]);
        }
        let phi = bapu.eval(i, &x);
        if phi != 0.0 {
            sum += (f.values()[flat].norm() * phi).powf(p);
        }
        for ax in (0..dim).rev() {
            idx[ax] += 1;
            if idx[ax] < ranges[ax].1 {
                continue 'outer;
            }
            idx[ax] = ranges[ax].0;
        }
        break;
    }
    (sum * grid.cell_volume()).powf(1.0 / p)
}

/// `||F^{-1}(f phi_i)||_{L^p}` on the reciprocal grid.
fn local_flp<B: Bapu>(f: &SampledFunction, bapu: &B, i: &B::Index, p: f64, plan: &CftPlan) -> f64 {
    let grid = f.grid();
    let mut values: Vec<_> = f
        .values()
        .iter()
        .enumerate()
        .map(|(k, v)| v * bapu.eval(i, &grid.point(k)))
        .collect();
    plan.apply_in_place(&mut values);
    let s: f64 = values.iter().map(|v| v.norm().powf(p)).sum();
    (s * plan.target().cell_volume()).powf(1.0 / p)
}

fn check_dims<B: Bapu>(f: &SampledFunction, bapu: &B) -> Result<(), NormError> {
    if f.dim() == bapu.dim() {
        Ok(())
    } else {
        Err(NormError::InvalidInput(format!(
            "function on R^{} but partition on R^{}",
            f.dim(),
            bapu.dim()
        )))
    }
}

/// Local norm of `f * phi_i`. Outside its grid box `f` is taken as zero.
pub fn local_norm<B: Bapu>(
    f: &SampledFunction,
    bapu: &B,
    i: &B::Index,
    p: f64,
    mode: NormMode,
) -> Result<f64, NormError> {
    check_exponent("p", p)?;
    check_dims(f, bapu)?;
    Ok(match mode {
        NormMode::Lp => local_lp(f, bapu, i, p),
        NormMode::FLp => {
            let plan = CftPlan::inverse(f.grid(), &f.grid().dual())?;
            local_flp(f, bapu, i, p, &plan)
        }
    })
}

fn box_contains(outer_lo: &[f64], outer_hi: &[f64], lo: &[f64], hi: &[f64]) -> bool {
    (0..lo.len()).all(|a| outer_lo[a] <= lo[a] && hi[a] <= outer_hi[a])
}

/// `||(||f phi_i||)_i||` over every index whose support meets the grid box.
pub fn decomposition_norm<B: Bapu>(
    f: &SampledFunction,
    bapu: &B,
    p: f64,
    mode: NormMode,
    global: &GlobalNorm,
) -> Result<NormResult, NormError> {
    check_exponent("p", p)?;
    check_exponent("q", global.q)?;
    check_dims(f, bapu)?;
    let grid = f.grid();
    let (box_lo, box_hi) = (grid.lo().to_vec(), grid.hi());
    let indices = bapu.indices_meeting(&box_lo, &box_hi);

    let mut warnings = Vec::new();
    let outside = indices
        .iter()
        .filter(|i| {
            let (lo, hi) = bapu.support_box(i);
            !box_contains(&box_lo, &box_hi, &lo, &hi)
        })
        .count();
    if outside > 0 {
        warnings.push(format!(
            "{outside} partition functions extend past the grid box; f is taken as zero outside it"
        ));
    }

    let plan = match mode {
        NormMode::Lp => None,
        NormMode::FLp => Some(CftPlan::inverse(grid, &grid.dual())?),
    };
    let values: Vec<f64> = indices
        .par_iter()
        .map(|i| match &plan {
            None => local_lp(f, bapu, i, p),
            Some(plan) => local_flp(f, bapu, i, p, plan),
        })
        .collect();

    let mut weighted = Vec::with_capacity(values.len());
    for (i, &v) in indices.iter().zip(&values) {
        weighted.push((global.weight_of(bapu.level(i))?, v));
    }
    let local_norms = indices
        .iter()
        .zip(&values)
        .map(|(i, &value)| LocalNorm {
            index: i.to_string(),
            value,
        })
        .collect();
    Ok(NormResult {
        local_norms,
        global: global.combine(&weighted),
        metadata: NormMetadata {
            bapu: bapu.describe(),
            p,
            q: global.q,
            mode,
            weight: global.weight,
            scheme: "composite midpoint".into(),
            h: grid.step().to_vec(),
            box_lo,
            box_hi,
            refinement_change: None,
            tolerance: None,
            warnings,
        },
    })
}

/// Largest change between two results, relative to the finer global value.
pub(crate) fn refinement_change(coarse: &NormResult, fine: &NormResult) -> f64 {
    let scale = fine.global.abs().max(f64::MIN_POSITIVE);
    let mut change = (fine.global - coarse.global).abs();
    for (a, b) in coarse.local_norms.iter().zip(&fine.local_norms) {
        change = change.max((a.value - b.value).abs());
    }
    change / scale
}

/// [`decomposition_norm`] of an analytic function on `grid` and on the
/// refined grid. The refined result is returned once the relative change is
/// within `tol` and, for `L^p`, the tail outside the box is below
/// `tol * global`.
pub fn decomposition_norm_refined<B: Bapu, S: Sampler + ?Sized>(
    f: &S,
    grid: &Grid,
    bapu: &B,
    p: f64,
    mode: NormMode,
    global: &GlobalNorm,
    tol: f64,
) -> Result<NormResult, NormError> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(NormError::InvalidInput(format!(
            "tolerance {tol} must be positive"
        )));
    }
    let sample = |g: &Grid| SampledFunction::from_fn(g.clone(), |x| f.eval(x));
    let coarse = decomposition_norm(&sample(grid), bapu, p, mode, global)?;
    let mut fine = decomposition_norm(&sample(&grid.refined()), bapu, p, mode, global)?;
    let change = refinement_change(&coarse, &fine);
    if change > tol {
        return Err(NormError::GridTooCoarse { change, tol });
    }
    match (mode, f.tail_bound(p, grid.lo(), &grid.hi())) {
        (NormMode::Lp, Some(tail)) => {
            let tail = tail.powf(1.0 / p);
            if tail > tol * fine.global.max(f64::MIN_POSITIVE) {
                return Err(NormError::TruncationDominates { tail, tol });
            }
        }
        (NormMode::Lp, None) => fine
            .metadata
            .warnings
            .push("no tail bound for f; values outside the box are ignored".into()),
        (NormMode::FLp, _) => fine
            .metadata
            .warnings
            .push("frequency-side samples are truncated to the box".into()),
    }
    fine.metadata.refinement_change = Some(change);
    fine.metadata.tolerance = Some(tol);
    Ok(fine)
}

/// `a'_i = sum_{j in i*} a_j` on the window of `nerve`.
pub fn clustering_map<I: Clone + Eq + std::hash::Hash + std::fmt::Display>(
    a: &[f64],
    nerve: &NerveGraph<I>,
) -> Result<Vec<f64>, NormError> {
    if a.len() != nerve.len() {
        return Err(NormError::IndexMismatch {
            expected: nerve.len(),
            got: a.len(),
        });
    }
    Ok((0..nerve.len())
        .map(|i| nerve.adjacent(i).iter().map(|&j| a[j]).sum())
        .collect())
}
