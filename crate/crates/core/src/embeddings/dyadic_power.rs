//! The power map `phi(x) = |x|^n` from `R^n` to `R_+` and the pullback
//! `f -> f o phi` between space-side Besov-type spaces.
//!
//! Polar coordinates give `||f o phi||_{L^p(R^n)} = V_n^{1/p} ||f||_{L^p(R_+)}`
//! with `V_n = pi^{n/2} / Gamma(1 + n/2)`, the volume of the unit ball. On
//! the unscaled dyadic covering of `R^n` the map sends level `m` to level
//! `n m`; on the covering pulled back by `r^n` it sends level `m` to `m`.

use std::f64::consts::PI;

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma;

use super::index_map::{induced_index_map, IndexMapReport};
use super::qi::{fit_qi_parameters, MapSample, QiWitness};
use super::EmbeddingError;
use crate::covered_space::{
    build_nerve, ChainDistances, DyadicAnnuli, Rational, RationalPoint, Window,
};
use crate::decomposition::{
    besov_norm, DyadicBapu, Grid, NormError, Order, SampledFunction, Sampler,
};
use crate::metric::DistanceMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerEmbeddingOptions {
    /// The image is integrated over `[-half_width, half_width]^n`.
    pub half_width: f64,
    /// Spacing of the image grid.
    pub h: f64,
    /// Spacing of the grid on `[0, half_width^n]`.
    pub source_h: f64,
    /// Dyadic levels `0..=levels` used for the parameter fit and index maps.
    pub levels: u32,
    /// Relative tolerance of the refinement and truncation checks.
    pub tol: f64,
}

impl PowerEmbeddingOptions {
    pub fn for_dimension(n: usize) -> Self {
        let (half_width, h) = match n {
            1 => (40.0, 1.0 / 64.0),
            2 => (7.0, 1.0 / 32.0),
            _ => (4.0, 1.0 / 16.0),
        };
        Self {
            half_width,
            h,
            source_h: 1.0 / 256.0,
            levels: 8,
            tol: 1e-4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerEmbeddingReport {
    pub n: usize,
    pub p: f64,
    pub q: f64,
    pub s: f64,
    pub source_norm: f64,
    pub image_norm: f64,
    /// `image_norm / source_norm`, absent when `f = 0`.
    pub ratio: Option<f64>,
    /// `V_n^{1/p}`.
    pub expected_constant: f64,
    pub relative_error: Option<f64>,
    /// Besov-type norms of `f` (weight `2^{m s}`) and of `f o phi` on the
    /// scaled covering (same weight per level).
    pub source_besov: f64,
    pub image_besov: f64,
    pub refinement_change: f64,
    pub tail_bound: Option<f64>,
    /// Fit of `phi` from the unscaled covering of `R^n` to `R_+`.
    pub qi_fit: QiWitness,
    /// Whether `(L, C) = (n, 1)` is admissible on the same sample.
    pub n_one_feasible: bool,
    pub scaled_index_map: IndexMapReport,
    pub unscaled_index_map: IndexMapReport,
    pub pullback_weight: String,
    pub warnings: Vec<String>,
}

/// Volume of the unit ball of `R^n`.
pub fn unit_ball_volume(n: usize) -> f64 {
    PI.powf(n as f64 / 2.0) / gamma(1.0 + n as f64 / 2.0)
}

/// `|x|^n` as a point of `R_+`; exact on axis points and for even `n`.
fn power_point(n: usize, x: &RationalPoint) -> RationalPoint {
    let nonzero: Vec<&Rational> = x.iter().filter(|t| !t.is_zero()).collect();
    let value = if nonzero.len() <= 1 {
        let r = nonzero.first().map_or(Rational::zero(), |t| t.abs());
        (0..n).fold(Rational::from_integer(1), |acc, _| acc * r)
    } else if n.is_multiple_of(2) {
        let s: Rational = x.iter().map(|t| t * t).sum();
        (0..n / 2).fold(Rational::from_integer(1), |acc, _| acc * s)
    } else {
        let s: f64 = x
            .iter()
            .map(|t| (*t.numer() as f64 / *t.denom() as f64).powi(2))
            .sum();
        Ratio::approximate_float(s.sqrt().powi(n as i32)).unwrap_or_else(Rational::zero)
    };
    smallvec::smallvec![value]
}

fn lp_sum<S: Sampler + ?Sized>(f: &S, grid: &Grid, p: f64, n: usize) -> f64 {
    let sampled = SampledFunction::from_fn(grid.clone(), |x| {
        let r2: f64 = x.iter().map(|t| t * t).sum();
        f.eval(&[r2.sqrt().powi(n as i32)])
    });
    sampled.lp_norm(p)
}

fn qi_sample(n: usize, levels: u32) -> Result<MapSample, EmbeddingError> {
    let source = DyadicAnnuli::new(n, 1)?;
    let target = DyadicAnnuli::new(1, 1)?;
    let top = levels as i64 + 3;
    let sn = build_nerve(&source, &Window::Range { lo: 0, hi: top })?;
    let tn = build_nerve(
        &target,
        &Window::Range {
            lo: 0,
            hi: n as i64 * top,
        },
    )?;
    let mut radii = Vec::new();
    for a in 0..=levels {
        radii.push(Rational::from_integer(1 << a));
        radii.push(Rational::new(3 << a, 2));
    }
    let xs: Vec<RationalPoint> = radii.iter().map(|r| source.axis_point(*r)).collect();
    let ys: Vec<RationalPoint> = xs.iter().map(|x| power_point(n, x)).collect();
    let k = xs.len();
    let mut ds = vec![0.0; k * k];
    let mut dt = vec![0.0; k * k];
    for i in 0..k {
        let from_x = ChainDistances::new(&source, &sn, &xs[i])?;
        let from_y = ChainDistances::new(&target, &tn, &ys[i])?;
        for j in 0..k {
            ds[i * k + j] = from_x.to(&xs[j])? as f64;
            dt[i * k + j] = from_y.to(&ys[j])? as f64;
        }
    }
    let labels = radii.iter().map(|r| format!("|x| = {r}")).collect();
    MapSample::new(
        labels,
        DistanceMatrix::new(k, ds)?,
        DistanceMatrix::new(k, dt)?,
    )
}

/// Pullback of `f` on `R_+` to `R^n` by `|x|^n`, with the norm constant,
/// the Besov-type norms, the quasi-isometry fit and both index maps.
pub fn dyadic_power_embedding<S: Sampler + ?Sized>(
    n: usize,
    f: &S,
    p: f64,
    q: f64,
    s: f64,
    opts: &PowerEmbeddingOptions,
) -> Result<PowerEmbeddingReport, EmbeddingError> {
    if n == 0 || f.dim() != 1 {
        return Err(EmbeddingError::InvalidInput(
            "need n >= 1 and a function of one variable".into(),
        ));
    }
    let mut warnings = Vec::new();
    let top = opts.half_width.powi(n as i32);
    let src_grid = Grid::from_box(&[0.0], &[top], opts.source_h)?;
    let img_grid = Grid::symmetric(n, opts.half_width, opts.h)?;

    let source_norm = lp_sum(f, &src_grid.refined(), p, 1);
    let coarse_source = lp_sum(f, &src_grid, p, 1);
    let image_norm = lp_sum(f, &img_grid.refined(), p, n);
    let coarse_image = lp_sum(f, &img_grid, p, n);
    let rel = |a: f64, b: f64| {
        let scale = a.abs().max(b.abs());
        if scale == 0.0 {
            0.0
        } else {
            (a - b).abs() / scale
        }
    };
    let change = rel(source_norm, coarse_source).max(rel(image_norm, coarse_image));
    if change > opts.tol {
        return Err(NormError::GridTooCoarse {
            change,
            tol: opts.tol,
        }
        .into());
    }
    let tail = f.tail_bound(p, &[-top], &[top]).map(|t| t.powf(1.0 / p));
    match tail {
        Some(t) if t > opts.tol * source_norm && t > 0.0 => {
            return Err(NormError::TruncationDominates {
                tail: t,
                tol: opts.tol,
            }
            .into());
        }
        None => warnings.push("no tail bound for f; mass beyond the box is ignored".into()),
        _ => {}
    }
    let expected = unit_ball_volume(n).powf(1.0 / p);
    let ratio = (source_norm > 0.0).then(|| image_norm / source_norm);
    let relative_error = ratio.map(|r| (r / expected - 1.0).abs());

    let eps = 0.25;
    let src_bapu = DyadicBapu::new(1, 1, eps, Order::Two)?;
    let img_bapu = DyadicBapu::new(n, n as u32, eps, Order::Two)?;
    let src_f = SampledFunction::from_fn(src_grid.clone(), |x| f.eval(x));
    let img_f = SampledFunction::from_fn(img_grid.clone(), |x| {
        let r2: f64 = x.iter().map(|t| t * t).sum();
        f.eval(&[r2.sqrt().powi(n as i32)])
    });
    let source_besov = besov_norm(&src_f, &src_bapu, s, p, q)?.global;
    let image_besov = besov_norm(&img_f, &img_bapu, s, p, q)?.global;

    let sample = qi_sample(n, opts.levels)?;
    let qi_fit = fit_qi_parameters(&sample, 2.0 * n as f64, 1.0)?;
    let n_one_feasible = sample.required_c(n as f64) <= 1.0;

    let target = DyadicAnnuli::new(1, 1)?;
    let levels = opts.levels as i64;
    let map = |x: &RationalPoint| power_point(n, x);
    let scaled_index_map = induced_index_map(
        &DyadicAnnuli::new(n, n as u32)?,
        &Window::Range { lo: 0, hi: levels },
        &target,
        &Window::Range { lo: 0, hi: levels },
        map,
    )?;
    let unscaled_index_map = induced_index_map(
        &DyadicAnnuli::new(n, 1)?,
        &Window::Range { lo: 0, hi: levels },
        &target,
        &Window::Range {
            lo: 0,
            hi: n as i64 * levels,
        },
        map,
    )?;
    Ok(PowerEmbeddingReport {
        n,
        p,
        q,
        s,
        source_norm,
        image_norm,
        ratio,
        expected_constant: expected,
        relative_error,
        source_besov,
        image_besov,
        refinement_change: change,
        tail_bound: tail,
        qi_fit,
        n_one_feasible,
        scaled_index_map,
        unscaled_index_map,
        pullback_weight: format!(
            "l^q with weight 2^(j s) on scaled levels j, i.e. 2^(m {n} s) on unscaled levels m"
        ),
        warnings,
    })
}
