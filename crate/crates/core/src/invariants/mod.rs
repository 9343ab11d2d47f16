//! Quasi-isometry invariant probes.
//!
//! Growth type, four-point hyperbolicity, coarse connectedness and
//! finite-scale dimension bounds are evaluated on finite windows. None of
//! them can certify a quasi-isometry; they can only obstruct one, and the
//! obstruction report says so.

mod coarse;
mod growth;
mod hyperbolicity;
mod nilpotent;
mod obstruction;

use thiserror::Error;

pub use coarse::{
    box_multiplicity_probe, box_multiplicity_probe_window, coarse_connected, estimate_ends,
    BoxMultiplicity,
};
pub use growth::{
    classify_growth, FitWindow, GrowthClassification, GrowthProfile, DEFAULT_TAIL_FRACTION,
    RESIDUAL_THRESHOLD,
};
pub use hyperbolicity::{
    four_point_delta, four_point_delta_with, hyperbolicity_trend, DeltaEstimate, DeltaOptions,
    HyperbolicityProfile, Trend, TREND_SLOPE_THRESHOLD,
};
pub use nilpotent::{bass_guivarch, homogeneous_dimension, GrowthVector, LowerCentralData};
pub use obstruction::{
    qi_obstruction_report, ObstructionReport, SpaceProfile, Verdict, DEGREE_TOLERANCE,
};

use crate::groups::GroupError;
use crate::metric::MetricViolation;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InvariantError {
    #[error("not a metric: {0}")]
    NotAMetric(#[from] MetricViolation),
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("element budget exceeded; profile computed up to radius {}", partial.radii.last().copied().unwrap_or(0))]
    ResourceLimit { partial: Box<HyperbolicityProfile> },
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Least-squares line `y = a + b x`; returns `(a, b, rms residual)`.
pub(crate) fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let b = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let a = my - b * mx;
    let rss: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| {
            let e = y - a - b * x;
            e * e
        })
        .sum();
    (a, b, (rss / n).sqrt())
}
