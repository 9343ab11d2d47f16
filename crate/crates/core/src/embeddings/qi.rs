//! Fitting `(L, C)` with `d_X / L - C <= d_Z <= L d_X + C` on a sample.
//!
//! For fixed `L` the least admissible `C` is
//! `C(L) = max over pairs of max(0, d_Z - L d_X, d_X / L - d_Z)`, a convex
//! function of `L`. The fit minimises `L` first and then takes `C(L)`: a
//! ternary search finds the minimiser of `C` on `[1, L_max]`, and a
//! bisection on the lattice `1 + k / 1024` finds the smallest feasible `L`
//! below it.

use serde::{Deserialize, Serialize};

use super::EmbeddingError;
use crate::metric::DistanceMatrix;

/// Spacing of the lattice on which the minimal `L` is located.
pub const BISECTION_RESOLUTION: f64 = 1.0 / 1024.0;

/// A sampled map: distances among source points and among their images.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MapSample {
    pub labels: Vec<String>,
    pub source: DistanceMatrix,
    pub target: DistanceMatrix,
}

impl MapSample {
    pub fn new(
        labels: Vec<String>,
        source: DistanceMatrix,
        target: DistanceMatrix,
    ) -> Result<Self, EmbeddingError> {
        if source.len() != target.len() || labels.len() != source.len() {
            return Err(EmbeddingError::InvalidInput(format!(
                "{} labels, {} source points, {} images",
                labels.len(),
                source.len(),
                target.len()
            )));
        }
        if source.len() < 2 {
            return Err(EmbeddingError::TooFewPairs(source.len()));
        }
        for m in [&source, &target] {
            for i in 0..m.len() {
                for j in 0..m.len() {
                    let d = m.get(i, j);
                    if !(d >= 0.0 && d.is_finite()) {
                        return Err(EmbeddingError::InvalidInput(format!(
                            "distance ({i}, {j}) = {d} is not a finite non-negative number"
                        )));
                    }
                }
            }
        }
        Ok(Self {
            labels,
            source,
            target,
        })
    }

    /// Sample of points with explicit metrics on both sides.
    pub fn from_points<P, Q>(
        source: &[P],
        image: impl Fn(&P) -> Q,
        ds: impl Fn(&P, &P) -> f64,
        dt: impl Fn(&Q, &Q) -> f64,
        label: impl Fn(&P) -> String,
    ) -> Result<Self, EmbeddingError> {
        let images: Vec<Q> = source.iter().map(&image).collect();
        let n = source.len();
        let s = DistanceMatrix::from_fn(n, |i, j| ds(&source[i], &source[j]));
        let t = DistanceMatrix::from_fn(n, |i, j| dt(&images[i], &images[j]));
        Self::new(source.iter().map(label).collect(), s, t)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Composition with a second sample on the same points, read as a map
    /// from this sample's targets.
    pub fn then(&self, next: &MapSample) -> Result<Self, EmbeddingError> {
        if next.len() != self.len() {
            return Err(EmbeddingError::InvalidInput(
                "samples differ in length".into(),
            ));
        }
        Self::new(
            self.labels.clone(),
            self.source.clone(),
            next.target.clone(),
        )
    }

    fn pairs(&self) -> impl Iterator<Item = (usize, usize, f64, f64)> + '_ {
        let n = self.len();
        (0..n).flat_map(move |i| {
            (i + 1..n).map(move |j| (i, j, self.source.get(i, j), self.target.get(i, j)))
        })
    }

    /// `C(L)`.
    pub fn required_c(&self, l: f64) -> f64 {
        self.pairs()
            .map(|(_, _, dx, dz)| excess(dx, dz, l))
            .fold(0.0, f64::max)
    }
}

fn excess(dx: f64, dz: f64, l: f64) -> f64 {
    (dz - l * dx).max(dx / l - dz).max(0.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairViolation {
    pub a: String,
    pub b: String,
    pub source_distance: f64,
    pub target_distance: f64,
    /// Amount by which the pair exceeds the allowed `C`.
    pub excess: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QiWitness {
    pub l: f64,
    pub c: f64,
    pub feasible: bool,
    /// Offending pairs at the reported `(L, C)`, worst first.
    pub violations: Vec<PairViolation>,
    pub l_max: f64,
    pub c_max: f64,
    pub pairs_checked: usize,
}

impl QiWitness {
    /// True if both parameters are at most `(l, c)`.
    pub fn dominated_by(&self, l: f64, c: f64) -> bool {
        self.feasible && self.l <= l + 1e-12 && self.c <= c + 1e-12
    }
}

/// Pairs violating `(l, c)`, worst first.
fn violations(sample: &MapSample, l: f64, c: f64) -> Vec<PairViolation> {
    let mut out: Vec<PairViolation> = sample
        .pairs()
        .filter_map(|(i, j, dx, dz)| {
            let e = excess(dx, dz, l) - c;
            (e > 1e-12).then(|| PairViolation {
                a: sample.labels[i].clone(),
                b: sample.labels[j].clone(),
                source_distance: dx,
                target_distance: dz,
                excess: e,
            })
        })
        .collect();
    out.sort_by(|x, y| y.excess.total_cmp(&x.excess));
    out
}

/// Minimal `L` in `[1, l_max]`, then minimal `C <= c_max`. If no pair
/// `(L, C)` in the box works, the witness is infeasible and lists the pairs
/// violating `(l_max, c_max)`.
pub fn fit_qi_parameters(
    sample: &MapSample,
    l_max: f64,
    c_max: f64,
) -> Result<QiWitness, EmbeddingError> {
    if !(l_max >= 1.0 && c_max >= 0.0) {
        return Err(EmbeddingError::InvalidInput(format!(
            "caps L_max = {l_max}, C_max = {c_max} must satisfy L_max >= 1, C_max >= 0"
        )));
    }
    if sample.pairs().all(|(_, _, dx, _)| dx == 0.0) {
        return Err(EmbeddingError::DegenerateSample);
    }
    let pairs_checked = sample.len() * (sample.len() - 1) / 2;
    let c_at = |l: f64| sample.required_c(l);

    // minimiser of the convex function C on [1, l_max]
    let (mut a, mut b) = (1.0, l_max);
    for _ in 0..200 {
        if b - a < 1e-12 {
            break;
        }
        let m1 = a + (b - a) / 3.0;
        let m2 = b - (b - a) / 3.0;
        if c_at(m1) <= c_at(m2) {
            b = m2;
        } else {
            a = m1;
        }
    }
    let l_star = 0.5 * (a + b);
    if c_at(l_star) > c_max && c_at(1.0) > c_max && c_at(l_max) > c_max {
        return Ok(QiWitness {
            l: l_max,
            c: c_max,
            feasible: false,
            violations: violations(sample, l_max, c_max),
            l_max,
            c_max,
            pairs_checked,
        });
    }

    let l = if c_at(1.0) <= c_max {
        1.0
    } else {
        // C is non-increasing on [1, l_star]; find the first feasible lattice point
        let upper = if c_at(l_star) <= c_max { l_star } else { l_max };
        let last = ((upper - 1.0) / BISECTION_RESOLUTION).ceil() as u64;
        let at = |k: u64| (1.0 + k as f64 * BISECTION_RESOLUTION).min(upper);
        let (mut lo, mut hi) = (0u64, last);
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if c_at(at(mid)) <= c_max {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        at(hi)
    };
    Ok(QiWitness {
        l,
        c: c_at(l),
        feasible: true,
        violations: Vec::new(),
        l_max,
        c_max,
        pairs_checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn integer_map(points: &[i64], f: impl Fn(i64) -> i64) -> MapSample {
        MapSample::from_points(
            points,
            |&n| f(n),
            |a, b| (a - b).abs() as f64,
            |a, b| (a - b).abs() as f64,
            |n| n.to_string(),
        )
        .unwrap()
    }

    #[test]
    fn identity_and_doubling() {
        let pts: Vec<i64> = (-10..=10).collect();
        let w = fit_qi_parameters(&integer_map(&pts, |n| n), 10.0, 10.0).unwrap();
        assert!(w.feasible && w.l == 1.0 && w.c == 0.0);
        let w = fit_qi_parameters(&integer_map(&pts, |n| 2 * n), 10.0, 0.0).unwrap();
        assert!(w.feasible && w.l == 2.0 && w.c == 0.0, "{w:?}");
        // d_Z = 2 d_X on every pair, so both inequalities are tight at L = 2
        for i in 0..pts.len() {
            for j in 0..pts.len() {
                let dx = (pts[i] - pts[j]).abs() as f64;
                assert_eq!(2.0 * dx, (2 * pts[i] - 2 * pts[j]).abs() as f64);
            }
        }
    }

    #[test]
    fn squares_are_not_a_quasi_isometry() {
        let pts: Vec<i64> = (0..=20).collect();
        let w = fit_qi_parameters(&integer_map(&pts, |n| n * n), 10.0, 10.0).unwrap();
        assert!(!w.feasible);
        // 400 > 10 * 20 + 10
        assert!(w.violations.iter().any(|v| v.a == "0" && v.b == "20"));
        let worst = &w.violations[0];
        assert!(w.violations.iter().all(|v| v.excess <= worst.excess));
    }

    #[test]
    fn degenerate_and_short_samples() {
        let s = DistanceMatrix::from_fn(3, |_, _| 0.0);
        let t = DistanceMatrix::from_fn(3, |i, j| (i as f64 - j as f64).abs());
        let sample = MapSample::new(vec!["a".into(), "b".into(), "c".into()], s, t).unwrap();
        assert_eq!(
            fit_qi_parameters(&sample, 2.0, 1.0),
            Err(EmbeddingError::DegenerateSample)
        );
        let one = DistanceMatrix::from_fn(1, |_, _| 0.0);
        assert!(MapSample::new(vec!["a".into()], one.clone(), one).is_err());
    }

    #[test]
    fn fit_is_tight() {
        // n -> 3n + (n mod 2): feasible at (3, 1) but not at L < 3 with C = 1 over long ranges
        let pts: Vec<i64> = (0..40).collect();
        let w = fit_qi_parameters(&integer_map(&pts, |n| 3 * n + n % 2), 5.0, 1.0).unwrap();
        assert!(w.feasible);
        let s = integer_map(&pts, |n| 3 * n + n % 2);
        assert!(s.required_c(w.l) <= 1.0 + 1e-12);
        assert!(s.required_c(w.l - BISECTION_RESOLUTION) > 1.0);
    }

    proptest! {
        #[test]
        fn adding_pairs_never_lowers_l(
            coefs in proptest::collection::vec(-3i64..=3, 12),
            extra in proptest::collection::vec(-3i64..=3, 4),
        ) {
            let f = |n: i64, c: &[i64]| 2 * n + c[(n.rem_euclid(c.len() as i64)) as usize];
            let small: Vec<i64> = (0..12).collect();
            let big: Vec<i64> = (0..16).collect();
            let all: Vec<i64> = coefs.iter().chain(&extra).copied().collect();
            let a = fit_qi_parameters(&integer_map(&small, |n| f(n, &all)), 8.0, 2.0).unwrap();
            let b = fit_qi_parameters(&integer_map(&big, |n| f(n, &all)), 8.0, 2.0).unwrap();
            if a.feasible && b.feasible {
                prop_assert!(b.l >= a.l);
            }
            prop_assert!(a.feasible || !b.feasible);
        }

        #[test]
        fn composition_bound(
            a1 in 1i64..4, a2 in 1i64..4,
            j1 in proptest::collection::vec(0i64..3, 30),
            j2 in proptest::collection::vec(0i64..3, 30),
        ) {
            let pts: Vec<i64> = (0..30).collect();
            let g = |n: i64| a1 * n + j1[n as usize];
            let h = |m: i64, n: i64| a2 * m + j2[n as usize];
            let first = integer_map(&pts, g);
            let second = MapSample::from_points(
                &pts,
                |&n| h(g(n), n),
                |a, b| (g(*a) - g(*b)).abs() as f64,
                |a, b| (a - b).abs() as f64,
                |n| n.to_string(),
            ).unwrap();
            let w1 = fit_qi_parameters(&first, 10.0, 3.0).unwrap();
            let w2 = fit_qi_parameters(&second, 10.0, 3.0).unwrap();
            prop_assume!(w1.feasible && w2.feasible);
            let composed = first.then(&second).unwrap();
            let l = w1.l * w2.l;
            // g first, then h: d_h(g x, g y) <= L2 (L1 d + C1) + C2, and symmetrically below
            let c = w2.l * w1.c + w2.c + 1e-9;
            prop_assert!(composed.required_c(l) <= c);
        }
    }
}
