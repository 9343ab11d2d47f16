//! Analytic test functions that can be resampled on any grid.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc;

use super::grid::{Grid, SampledFunction};

/// A function known in closed form, so refinement checks can resample it.
pub trait Sampler: Sync {
    fn dim(&self) -> usize;
    fn eval(&self, x: &[f64]) -> Complex64;

    /// Upper bound for `int |f|^p` outside the box `[lo, hi]`, if known.
    fn tail_bound(&self, p: f64, lo: &[f64], hi: &[f64]) -> Option<f64>;

    fn sample(&self, grid: &Grid) -> SampledFunction {
        SampledFunction::from_fn(grid.clone(), |x| self.eval(x))
    }
}

fn default_one() -> f64 {
    1.0
}

/// Built-in presets referenced by name in run configs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Preset {
    /// `amplitude * exp(-pi * width^-2 |x - center|^2) * exp(2 pi i modulation.x)`.
    Gaussian {
        dim: usize,
        #[serde(default = "default_one")]
        width: f64,
        #[serde(default = "default_one")]
        amplitude: f64,
        #[serde(default)]
        center: Option<Vec<f64>>,
        #[serde(default)]
        modulation: Option<Vec<f64>>,
    },
    /// Smooth bump `exp(1 - 1 / (1 - |x - c|^2 / r^2))` on the ball of radius `r`.
    Bump {
        dim: usize,
        #[serde(default)]
        center: Option<Vec<f64>>,
        #[serde(default = "default_one")]
        radius: f64,
    },
    /// One on `[lo, hi]`, falling to zero over `ramp` with a smoothstep.
    Plateau {
        lo: Vec<f64>,
        hi: Vec<f64>,
        ramp: f64,
    },
    /// `exp(-rate |x|)`.
    Exponential {
        dim: usize,
        rate: f64,
    },
    /// Constant `value` (no tail bound: only usable on bounded boxes).
    Constant {
        dim: usize,
        value: f64,
    },
    Zero {
        dim: usize,
    },
}

fn offset(x: &[f64], center: &Option<Vec<f64>>) -> f64 {
    match center {
        Some(c) => x.iter().zip(c).map(|(a, b)| (a - b) * (a - b)).sum(),
        None => x.iter().map(|a| a * a).sum(),
    }
}

fn smoothstep(t: f64) -> f64 {
    let t = t.clamp(0.0, 1.0);
    t * t * t * (t * (6.0 * t - 15.0) + 10.0)
}

/// `int_{|t - c| > r} exp(-a t^2)` along one axis, for the interval
/// `[lo, hi]` around centre `c`.
fn gaussian_axis_tail(a: f64, c: f64, lo: f64, hi: f64) -> f64 {
    let sa = a.sqrt();
    let left = 0.5 * (PI / a).sqrt() * erfc((c - lo) * sa);
    let right = 0.5 * (PI / a).sqrt() * erfc((hi - c) * sa);
    left + right
}

impl Sampler for Preset {
    fn dim(&self) -> usize {
        match self {
            Preset::Gaussian { dim, .. }
            | Preset::Bump { dim, .. }
            | Preset::Exponential { dim, .. }
            | Preset::Constant { dim, .. }
            | Preset::Zero { dim } => *dim,
            Preset::Plateau { lo, .. } => lo.len(),
        }
    }

    fn eval(&self, x: &[f64]) -> Complex64 {
        match self {
            Preset::Gaussian {
                width,
                amplitude,
                center,
                modulation,
                ..
            } => {
                let r2 = offset(x, center) / (width * width);
                let mag = amplitude * (-PI * r2).exp();
                let phase = modulation.as_ref().map_or(0.0, |w| {
                    2.0 * PI * x.iter().zip(w).map(|(a, b)| a * b).sum::<f64>()
                });
                Complex64::from_polar(mag, phase)
            }
            Preset::Bump { center, radius, .. } => {
                let s = offset(x, center) / (radius * radius);
                let v = if s < 1.0 {
                    (1.0 - 1.0 / (1.0 - s)).exp()
                } else {
                    0.0
                };
                Complex64::new(v, 0.0)
            }
            Preset::Plateau { lo, hi, ramp } => {
                let v: f64 = x
                    .iter()
                    .zip(lo.iter().zip(hi))
                    .map(|(&t, (&a, &b))| {
                        if t < a {
                            smoothstep(1.0 - (a - t) / ramp)
                        } else if t > b {
                            smoothstep(1.0 - (t - b) / ramp)
                        } else {
                            1.0
                        }
                    })
                    .product();
                Complex64::new(v, 0.0)
            }
            Preset::Exponential { rate, .. } => {
                Complex64::new((-rate * offset(x, &None).sqrt()).exp(), 0.0)
            }
            Preset::Constant { value, .. } => Complex64::new(*value, 0.0),
            Preset::Zero { .. } => Complex64::new(0.0, 0.0),
        }
    }

    fn tail_bound(&self, p: f64, lo: &[f64], hi: &[f64]) -> Option<f64> {
        match self {
            Preset::Gaussian {
                dim,
                width,
                amplitude,
                center,
                ..
            } => {
                let a = PI * p / (width * width);
                let c = center.clone().unwrap_or_else(|| vec![0.0; *dim]);
                let full = (PI / a).sqrt();
                // union bound over axes; the other axes integrate over R
                let mut total = 0.0;
                for ax in 0..*dim {
                    total +=
                        gaussian_axis_tail(a, c[ax], lo[ax], hi[ax]) * full.powi(*dim as i32 - 1);
                }
                Some(amplitude.powf(p) * total)
            }
            Preset::Bump {
                dim,
                center,
                radius,
            } => {
                let c = center.clone().unwrap_or_else(|| vec![0.0; *dim]);
                let inside = (0..*dim).all(|a| lo[a] <= c[a] - radius && c[a] + radius <= hi[a]);
                inside.then_some(0.0)
            }
            Preset::Plateau { lo: a, hi: b, ramp } => {
                let inside = (0..a.len()).all(|k| lo[k] <= a[k] - ramp && b[k] + ramp <= hi[k]);
                inside.then_some(0.0)
            }
            Preset::Exponential { dim: 1, rate } => {
                // int_{-inf}^{t} e^{-a|x|} = e^{a t} / a for t <= 0, (2 - e^{-a t}) / a otherwise
                let a = p * rate;
                let below = |t: f64| {
                    if t <= 0.0 {
                        (a * t).exp() / a
                    } else {
                        (2.0 - (-a * t).exp()) / a
                    }
                };
                Some(below(lo[0]) + below(-hi[0]))
            }
            Preset::Exponential { .. } => None,
            Preset::Constant { value, .. } => (*value == 0.0).then_some(0.0),
            Preset::Zero { .. } => Some(0.0),
        }
    }
}

/// Standard Gaussian `exp(-pi |x|^2)` in `dim` dimensions.
pub fn standard_gaussian(dim: usize) -> Preset {
    Preset::Gaussian {
        dim,
        width: 1.0,
        amplitude: 1.0,
        center: None,
        modulation: None,
    }
}
