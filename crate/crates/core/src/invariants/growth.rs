//! Growth profiles and their classification.

use serde::{Deserialize, Serialize};

use super::{linear_fit, InvariantError};

pub const DEFAULT_TAIL_FRACTION: f64 = 0.5;
/// RMS residual in log space below which a fit is accepted.
pub const RESIDUAL_THRESHOLD: f64 = 0.05;
const MIN_TAIL_POINTS: usize = 6;

/// Ball sizes `beta(r)` of a group or covering.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthProfile {
    pub radii: Vec<u32>,
    pub sizes: Vec<u64>,
    pub source: String,
}

impl GrowthProfile {
    pub fn new(radii: Vec<u32>, sizes: Vec<u64>, source: impl Into<String>) -> Self {
        assert_eq!(radii.len(), sizes.len());
        Self {
            radii,
            sizes,
            source: source.into(),
        }
    }

    pub fn is_nondecreasing(&self) -> bool {
        self.sizes.windows(2).all(|w| w[0] <= w[1])
    }

    /// Writes `radius,ball_size` CSV.
    pub fn write_csv<W: std::io::Write>(&self, out: W) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["radius", "ball_size"])?;
        for (r, s) in self.radii.iter().zip(&self.sizes) {
            w.write_record([r.to_string(), s.to_string()])?;
        }
        w.flush()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitWindow {
    pub r_min: u32,
    pub r_max: u32,
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GrowthClassification {
    Bounded {
        size: u64,
        window: FitWindow,
    },
    /// `degree` is the slope of `log beta` against `log(r + 1/2)`.
    Polynomial {
        degree: f64,
        residual: f64,
        window: FitWindow,
    },
    /// `rate` is the slope of `log beta` against `r`.
    Exponential {
        rate: f64,
        residual: f64,
        window: FitWindow,
    },
    Inconclusive {
        polynomial_residual: f64,
        exponential_residual: f64,
        window: FitWindow,
    },
}

impl GrowthClassification {
    pub fn window(&self) -> FitWindow {
        match self {
            Self::Bounded { window, .. }
            | Self::Polynomial { window, .. }
            | Self::Exponential { window, .. }
            | Self::Inconclusive { window, .. } => *window,
        }
    }

    /// Polynomial degree, with bounded growth read as degree zero.
    pub fn degree(&self) -> Option<f64> {
        match self {
            Self::Bounded { .. } => Some(0.0),
            Self::Polynomial { degree, .. } => Some(*degree),
            _ => None,
        }
    }
}

/// Fits the tail of `profile`.
///
/// The polynomial fit uses `log(r + 1/2)` rather than `log r`: ball sizes of
/// lattices behave like `c (r + 1/2)^d` to leading orders, and the shift
/// removes most of the pre-asymptotic bias at small radii.
pub fn classify_growth(
    profile: &GrowthProfile,
    tail_fraction: f64,
) -> Result<GrowthClassification, InvariantError> {
    if !(0.0..=1.0).contains(&tail_fraction) || tail_fraction == 0.0 {
        return Err(InvariantError::InvalidInput(format!(
            "tail fraction {tail_fraction} outside (0, 1]"
        )));
    }
    if !profile.is_nondecreasing() || profile.sizes.contains(&0) {
        return Err(InvariantError::InvalidInput(
            "ball sizes must be positive and nondecreasing".into(),
        ));
    }
    let points: Vec<(u32, u64)> = profile
        .radii
        .iter()
        .copied()
        .zip(profile.sizes.iter().copied())
        .filter(|&(r, _)| r >= 1)
        .collect();
    let take = ((points.len() as f64) * tail_fraction).ceil() as usize;
    if take < MIN_TAIL_POINTS {
        return Err(InvariantError::TooFewPoints {
            needed: MIN_TAIL_POINTS,
            got: take,
        });
    }
    let tail = &points[points.len() - take..];
    let window = FitWindow {
        r_min: tail[0].0,
        r_max: tail[take - 1].0,
        points: take,
    };
    if tail.iter().all(|&(_, s)| s == tail[0].1) {
        return Ok(GrowthClassification::Bounded {
            size: tail[0].1,
            window,
        });
    }
    let ys: Vec<f64> = tail.iter().map(|&(_, s)| (s as f64).ln()).collect();
    let log_r: Vec<f64> = tail.iter().map(|&(r, _)| (r as f64 + 0.5).ln()).collect();
    let lin_r: Vec<f64> = tail.iter().map(|&(r, _)| r as f64).collect();
    let (_, degree, poly_res) = linear_fit(&log_r, &ys);
    let (_, rate, exp_res) = linear_fit(&lin_r, &ys);
    let poly_ok = poly_res < RESIDUAL_THRESHOLD && degree > 0.0;
    let exp_ok = exp_res < RESIDUAL_THRESHOLD && rate > 0.0;
    Ok(match (poly_ok, exp_ok) {
        (true, true) if poly_res <= exp_res => GrowthClassification::Polynomial {
            degree,
            residual: poly_res,
            window,
        },
        (true, false) => GrowthClassification::Polynomial {
            degree,
            residual: poly_res,
            window,
        },
        (_, true) => GrowthClassification::Exponential {
            rate,
            residual: exp_res,
            window,
        },
        (false, false) => GrowthClassification::Inconclusive {
            polynomial_residual: poly_res,
            exponential_residual: exp_res,
            window,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn profile(f: impl Fn(u64) -> u64, r_max: u32) -> GrowthProfile {
        let radii: Vec<u32> = (0..=r_max).collect();
        let sizes = radii.iter().map(|&r| f(r as u64)).collect();
        GrowthProfile::new(radii, sizes, "test")
    }

    #[test]
    fn square_lattice_is_quadratic() {
        let p = profile(|r| 2 * r * r + 2 * r + 1, 30);
        match classify_growth(&p, DEFAULT_TAIL_FRACTION).unwrap() {
            GrowthClassification::Polynomial { degree, .. } => {
                assert!((1.8..=2.2).contains(&degree), "degree {degree}")
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn free_group_is_exponential() {
        let p = profile(|r| 2 * 3u64.pow(r as u32) - 1, 12);
        match classify_growth(&p, DEFAULT_TAIL_FRACTION).unwrap() {
            GrowthClassification::Exponential { rate, .. } => {
                assert!((rate - 3f64.ln()).abs() < 0.05)
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn stabilising_profile_is_bounded() {
        let p = profile(|r| (2 * r + 1).min(9), 20);
        assert!(matches!(
            classify_growth(&p, 0.5).unwrap(),
            GrowthClassification::Bounded { size: 9, .. }
        ));
    }

    #[test]
    fn short_profiles_are_rejected() {
        let p = profile(|r| r + 1, 6);
        assert!(matches!(
            classify_growth(&p, 0.5),
            Err(InvariantError::TooFewPoints { .. })
        ));
    }

    #[test]
    fn csv_export() {
        let p = profile(|r| 2 * r + 1, 2);
        let mut buf = Vec::new();
        p.write_csv(&mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "radius,ball_size\n0,1\n1,3\n2,5\n"
        );
    }
}
