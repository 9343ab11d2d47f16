//! Cell-centred sampling grids and sampled complex functions.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::NormError;

/// Tensor grid of cell midpoints `lo + (k + 1/2) h` covering the box
/// `[lo, lo + n h]` exactly. The last axis varies fastest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    lo: Vec<f64>,
    step: Vec<f64>,
    counts: Vec<usize>,
}

impl Grid {
    pub fn new(lo: Vec<f64>, step: Vec<f64>, counts: Vec<usize>) -> Result<Self, NormError> {
        if lo.is_empty() || lo.len() != step.len() || lo.len() != counts.len() {
            return Err(NormError::InvalidGrid("axis data lengths differ".into()));
        }
        if step.iter().any(|&h| !(h > 0.0 && h.is_finite())) || counts.contains(&0) {
            return Err(NormError::InvalidGrid(
                "steps must be positive, counts non-zero".into(),
            ));
        }
        Ok(Self { lo, step, counts })
    }

    /// The box `[-half_width, half_width]^dim` with spacing `h`; `2 half_width / h`
    /// must be an integer.
    pub fn symmetric(dim: usize, half_width: f64, h: f64) -> Result<Self, NormError> {
        Self::from_box(&vec![-half_width; dim], &vec![half_width; dim], h)
    }

    /// The box `[lo, hi]` with spacing `h` along every axis.
    pub fn from_box(lo: &[f64], hi: &[f64], h: f64) -> Result<Self, NormError> {
        let mut counts = Vec::with_capacity(lo.len());
        for (a, b) in lo.iter().zip(hi) {
            let n = (b - a) / h;
            let rounded = n.round();
            if rounded < 1.0 || (n - rounded).abs() > 1e-9 * rounded.max(1.0) {
                return Err(NormError::InvalidGrid(format!(
                    "side {} is not a multiple of h = {h}",
                    b - a
                )));
            }
            counts.push(rounded as usize);
        }
        Self::new(lo.to_vec(), vec![h; lo.len()], counts)
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[f64] {
        &self.lo
    }

    pub fn step(&self) -> &[f64] {
        &self.step
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn hi(&self) -> Vec<f64> {
        (0..self.dim())
            .map(|a| self.lo[a] + self.counts[a] as f64 * self.step[a])
            .collect()
    }

    pub fn len(&self) -> usize {
        self.counts.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn cell_volume(&self) -> f64 {
        self.step.iter().product()
    }

    #[inline]
    pub fn coord(&self, axis: usize, k: usize) -> f64 {
        self.lo[axis] + (k as f64 + 0.5) * self.step[axis]
    }

    /// Multi-index of the flat position `flat`.
    pub fn unravel(&self, mut flat: usize, out: &mut [usize]) {
        for a in (0..self.dim()).rev() {
            out[a] = flat % self.counts[a];
            flat /= self.counts[a];
        }
    }

    pub fn point(&self, flat: usize) -> Vec<f64> {
        let mut idx = vec![0; self.dim()];
        self.unravel(flat, &mut idx);
        idx.iter()
            .enumerate()
            .map(|(a, &k)| self.coord(a, k))
            .collect()
    }

    /// Same box, half the spacing.
    pub fn refined(&self) -> Self {
        Self {
            lo: self.lo.clone(),
            step: self.step.iter().map(|h| h / 2.0).collect(),
            counts: self.counts.iter().map(|n| 2 * n).collect(),
        }
    }

    /// The reciprocal grid used by the discrete Fourier transform: same
    /// counts, spacing `1 / (n h)`, symmetric about the origin.
    pub fn dual(&self) -> Self {
        let step: Vec<f64> = (0..self.dim())
            .map(|a| 1.0 / (self.counts[a] as f64 * self.step[a]))
            .collect();
        let lo = (0..self.dim())
            .map(|a| -0.5 * self.counts[a] as f64 * step[a])
            .collect();
        Self {
            lo,
            step,
            counts: self.counts.clone(),
        }
    }

    /// Product grid `self x other`.
    pub fn product(&self, other: &Grid) -> Self {
        Self {
            lo: self.lo.iter().chain(&other.lo).copied().collect(),
            step: self.step.iter().chain(&other.step).copied().collect(),
            counts: self.counts.iter().chain(&other.counts).copied().collect(),
        }
    }

    /// Index range `[first, last)` of midpoints along `axis` inside `[a, b]`.
    pub fn range_in(&self, axis: usize, a: f64, b: f64) -> (usize, usize) {
        let h = self.step[axis];
        let first = ((a - self.lo[axis]) / h - 0.5).ceil().max(0.0) as usize;
        let last = (((b - self.lo[axis]) / h - 0.5).floor() + 1.0).max(0.0) as usize;
        (first.min(self.counts[axis]), last.min(self.counts[axis]))
    }

    pub fn same_shape(&self, other: &Grid) -> bool {
        self.counts == other.counts
            && self
                .lo
                .iter()
                .zip(&other.lo)
                .chain(self.step.iter().zip(&other.step))
                .all(|(a, b)| (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0))
    }
}

/// Complex samples aligned with a [`Grid`], row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    grid: Grid,
    values: Vec<Complex64>,
}

impl SampledFunction {
    pub fn new(grid: Grid, values: Vec<Complex64>) -> Result<Self, NormError> {
        if values.len() != grid.len() {
            return Err(NormError::InvalidGrid(format!(
                "{} values for a grid of {} points",
                values.len(),
                grid.len()
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: Grid) -> Self {
        let n = grid.len();
        Self {
            grid,
            values: vec![Complex64::new(0.0, 0.0); n],
        }
    }

    pub fn from_fn(grid: Grid, f: impl Fn(&[f64]) -> Complex64) -> Self {
        let mut values = Vec::with_capacity(grid.len());
        let mut idx = vec![0usize; grid.dim()];
        let mut x = vec![0.0; grid.dim()];
        for flat in 0..grid.len() {
            grid.unravel(flat, &mut idx);
            for a in 0..grid.dim() {
                x[a] = grid.coord(a, idx[a]);
            }
            values.push(f(&x));
        }
        Self { grid, values }
    }

    pub fn real(grid: Grid, f: impl Fn(&[f64]) -> f64) -> Self {
        Self::from_fn(grid, |x| Complex64::new(f(x), 0.0))
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn dim(&self) -> usize {
        self.grid.dim()
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Self {
            grid: self.grid.clone(),
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, NormError> {
        if !self.grid.same_shape(&other.grid) {
            return Err(NormError::InvalidGrid("grids differ".into()));
        }
        Ok(Self {
            grid: self.grid.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Midpoint-rule `L^p` norm.
    pub fn lp_norm(&self, p: f64) -> f64 {
        let s: f64 = self.values.iter().map(|v| v.norm().powf(p)).sum();
        (s * self.grid.cell_volume()).powf(1.0 / p)
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Tensor product `self (x) other` on the product grid.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut values = Vec::with_capacity(self.values.len() * other.values.len());
        for a in &self.values {
            for b in &other.values {
                values.push(a * b);
            }
        }
        Self {
            grid: self.grid.product(&other.grid),
            values,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_grid_geometry() {
        let g = Grid::symmetric(2, 1.0, 0.25).unwrap();
        assert_eq!(g.counts(), &[8, 8]);
        assert_eq!(g.point(0), vec![-0.875, -0.875]);
        assert_eq!(g.point(9), vec![-0.625, -0.625]);
        assert!((g.cell_volume() - 1.0 / 16.0).abs() < 1e-15);
        assert!(Grid::from_box(&[0.0], &[1.0], 0.3).is_err());
    }

    #[test]
    fn ranges_select_midpoints_inside() {
        let g = Grid::from_box(&[0.0], &[4.0], 0.5).unwrap();
        // midpoints 0.25, 0.75, ..., 3.75
        assert_eq!(g.range_in(0, 1.0, 2.0), (2, 4));
        assert_eq!(g.range_in(0, -5.0, 0.25), (0, 1));
        assert_eq!(g.range_in(0, 10.0, 12.0), (8, 8));
    }

    #[test]
    fn dual_of_symmetric_grid_is_an_involution() {
        let g = Grid::symmetric(1, 6.0, 0.125).unwrap();
        let d = g.dual();
        assert!((d.step()[0] - 1.0 / 12.0).abs() < 1e-15);
        assert!(d.dual().same_shape(&g));
    }

    #[test]
    fn midpoint_norm_of_constant() {
        let g = Grid::from_box(&[0.0, 0.0], &[2.0, 3.0], 0.5).unwrap();
        let f = SampledFunction::real(g, |_| 2.0);
        assert!((f.lp_norm(1.0) - 12.0).abs() < 1e-12);
        assert!((f.lp_norm(2.0) - 24f64.sqrt()).abs() < 1e-12);
    }
}
