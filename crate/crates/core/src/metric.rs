//! Dense finite metric data shared by the invariant probes and the
//! quasi-isometry fitting.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricViolation {
    #[error("matrix data has {got} entries, expected {expected}")]
    Shape { expected: usize, got: usize },
    #[error("d({0},{0}) is not zero")]
    NonZeroDiagonal(usize),
    #[error("d({0},{1}) is not finite")]
    Infinite(usize, usize),
    #[error("d({0},{1}) is negative")]
    Negative(usize, usize),
    #[error("d({0},{1}) != d({1},{0})")]
    Asymmetric(usize, usize),
    #[error("distinct points {0} and {1} at distance zero")]
    Degenerate(usize, usize),
    #[error("triangle inequality fails for ({0},{1},{2})")]
    Triangle(usize, usize, usize),
}

/// Symmetric matrix of pairwise distances. Entries above a search cap are
/// stored as `f64::INFINITY`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DistanceMatrix {
    pub fn new(n: usize, data: Vec<f64>) -> Result<Self, MetricViolation> {
        if data.len() != n * n {
            return Err(MetricViolation::Shape {
                expected: n * n,
                got: data.len(),
            });
        }
        Ok(Self { n, data })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let d = f(i, j);
                data[i * n + j] = d;
                data[j * n + i] = d;
            }
        }
        Self { n, data }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn above_cap_count(&self) -> usize {
        let mut count = 0;
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.get(i, j).is_infinite() {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn submatrix(&self, keep: &[usize]) -> Self {
        let m = keep.len();
        let mut data = Vec::with_capacity(m * m);
        for &i in keep {
            for &j in keep {
                data.push(self.get(i, j));
            }
        }
        Self { n: m, data }
    }

    /// Checks the metric axioms exactly (the entries used throughout the
    /// crate are integers or half-integers, so no tolerance is applied).
    pub fn check_metric(&self) -> Result<(), MetricViolation> {
        let n = self.n;
        for i in 0..n {
            if self.get(i, i) != 0.0 {
                return Err(MetricViolation::NonZeroDiagonal(i));
            }
            for j in 0..n {
                let d = self.get(i, j);
                if !d.is_finite() {
                    return Err(MetricViolation::Infinite(i, j));
                }
                if d < 0.0 {
                    return Err(MetricViolation::Negative(i, j));
                }
                if d != self.get(j, i) {
                    return Err(MetricViolation::Asymmetric(i, j));
                }
                if i != j && d == 0.0 {
                    return Err(MetricViolation::Degenerate(i, j));
                }
            }
        }
        for i in 0..n {
            let ri = self.row(i);
            for j in 0..n {
                let dij = ri[j];
                let rj = self.row(j);
                for k in 0..n {
                    if ri[k] > dij + rj[k] {
                        return Err(MetricViolation::Triangle(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }
}
