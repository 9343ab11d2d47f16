//! Haar-measure quadrature on `SL(2,R)` in Iwasawa coordinates.
//!
//! `g = k_theta n_x a_y` with `theta in [0, 2 pi)`, `x in R`, `y > 0`; the
//! Haar measure is `y^{-2} dx dy dtheta`. Integrals are taken over
//! `[0, 2 pi) x [-X, X] x (0, Y]` by the midpoint rule, once at the given
//! resolution and once at double resolution, followed by Richardson
//! extrapolation. Mass outside the box comes from an analytic tail bound.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc;
use statrs::function::gamma::{gamma, gamma_ur};

use super::NormError;

/// Test functions with known tails.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IwasawaFunction {
    /// `y^k e^{-y - x^2}`, integrable against the Haar measure for `k >= 2`.
    PowerExp {
        k: u32,
    },
    Zero,
}

impl IwasawaFunction {
    pub fn eval(&self, _theta: f64, x: f64, y: f64) -> f64 {
        match self {
            IwasawaFunction::PowerExp { k } => y.powi(*k as i32) * (-y - x * x).exp(),
            IwasawaFunction::Zero => 0.0,
        }
    }

    /// Haar mass outside the truncated domain.
    pub fn tail_bound(&self, domain: &IwasawaDomain) -> Result<f64, NormError> {
        match self {
            IwasawaFunction::PowerExp { k } => {
                if *k < 2 {
                    return Err(NormError::InvalidInput(format!(
                        "y^{k} e^(-y - x^2) is not Haar-integrable near y = 0"
                    )));
                }
                let a = *k as f64 - 1.0;
                let y_mass = gamma(a);
                let y_tail = y_mass * gamma_ur(a, domain.y_max);
                let x_mass = PI.sqrt();
                let x_tail = x_mass * erfc(domain.x_max);
                Ok(2.0 * PI * (x_tail * y_mass + x_mass * y_tail))
            }
            IwasawaFunction::Zero => Ok(0.0),
        }
    }

    /// Exact value of the full integral.
    pub fn exact(&self) -> Option<f64> {
        match self {
            IwasawaFunction::PowerExp { k } if *k >= 2 => {
                Some(2.0 * PI.powf(1.5) * gamma(*k as f64 - 1.0))
            }
            IwasawaFunction::PowerExp { .. } => None,
            IwasawaFunction::Zero => Some(0.0),
        }
    }
}

/// Truncated integration box and base resolution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IwasawaDomain {
    pub x_max: f64,
    pub y_max: f64,
    pub n_theta: usize,
    pub n_x: usize,
    pub n_y: usize,
}

impl Default for IwasawaDomain {
    fn default() -> Self {
        Self {
            x_max: 6.0,
            y_max: 50.0,
            n_theta: 8,
            n_x: 96,
            n_y: 1600,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IwasawaResult {
    pub value: f64,
    pub coarse: f64,
    pub fine: f64,
    pub relative_change: f64,
    pub tail_bound: f64,
    pub tolerance: f64,
    pub domain: IwasawaDomain,
    pub scheme: String,
}

fn midpoint(f: &(impl Fn(f64, f64, f64) -> f64 + Sync), d: &IwasawaDomain, scale: usize) -> f64 {
    use rayon::prelude::*;
    let (nt, nx, ny) = (d.n_theta * scale, d.n_x * scale, d.n_y * scale);
    let (ht, hx, hy) = (
        2.0 * PI / nt as f64,
        2.0 * d.x_max / nx as f64,
        d.y_max / ny as f64,
    );
    let rows: Vec<f64> = (0..nt)
        .into_par_iter()
        .map(|i| {
            let theta = (i as f64 + 0.5) * ht;
            let mut s = 0.0;
            for j in 0..nx {
                let x = -d.x_max + (j as f64 + 0.5) * hx;
                for k in 0..ny {
                    let y = (k as f64 + 0.5) * hy;
                    s += f(theta, x, y) / (y * y);
                }
            }
            s
        })
        .collect();
    rows.iter().sum::<f64>() * ht * hx * hy
}

/// `int f(theta, x, y) y^{-2} dx dy dtheta` for a closure `f` whose Haar
/// mass outside `domain` is at most `tail`.
pub fn sl2_l1_norm_with(
    f: impl Fn(f64, f64, f64) -> f64 + Sync,
    tail: f64,
    domain: &IwasawaDomain,
    tol: f64,
) -> Result<IwasawaResult, NormError> {
    if !(domain.x_max > 0.0 && domain.y_max > 0.0)
        || domain.n_theta == 0
        || domain.n_x == 0
        || domain.n_y == 0
    {
        return Err(NormError::InvalidInput("empty Iwasawa domain".into()));
    }
    let abs = |t: f64, x: f64, y: f64| f(t, x, y).abs();
    let coarse = midpoint(&abs, domain, 1);
    let fine = midpoint(&abs, domain, 2);
    let value = (4.0 * fine - coarse) / 3.0;
    let scale = value.abs().max(f64::MIN_POSITIVE);
    let change = (value - fine).abs() / scale;
    if change > tol {
        return Err(NormError::GridTooCoarse { change, tol });
    }
    if tail > tol * scale && tail > 0.0 {
        return Err(NormError::TruncationDominates { tail, tol });
    }
    Ok(IwasawaResult {
        value,
        coarse,
        fine,
        relative_change: change,
        tail_bound: tail,
        tolerance: tol,
        domain: *domain,
        scheme: "midpoint, Richardson over one doubling".into(),
    })
}

/// `L^1` norm with respect to the Haar measure.
pub fn sl2_l1_norm(
    f: &IwasawaFunction,
    domain: &IwasawaDomain,
    tol: f64,
) -> Result<IwasawaResult, NormError> {
    let tail = f.tail_bound(domain)?;
    sl2_l1_norm_with(|t, x, y| f.eval(t, x, y), tail, domain, tol)
}
