//! Continuous Fourier transform `F f(xi) = int f(x) e^{-2 pi i x.xi} dx`
//! approximated on cell-centred grids.
//!
//! A grid with `n` points and spacing `h` pairs with a frequency grid of `n`
//! points and spacing `1 / (n h)`. For such a pair the midpoint rule is an
//! exact linear map computed by one FFT per axis with pre- and
//! post-twiddles, and the discrete inverse undoes it exactly.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::grid::{Grid, SampledFunction};
use super::NormError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Direction {
    Forward,
    Inverse,
}

struct AxisPlan {
    n: usize,
    pre: Vec<Complex64>,
    post: Vec<Complex64>,
    fft: Arc<dyn Fft<f64>>,
}

/// Precomputed transform between two reciprocal grids.
pub struct CftPlan {
    source: Grid,
    target: Grid,
    axes: Vec<AxisPlan>,
    scratch_len: usize,
}

impl CftPlan {
    /// Forward plan from `source` to the reciprocal grid `target`.
    pub fn forward(source: &Grid, target: &Grid) -> Result<Self, NormError> {
        Self::build(source, target, Direction::Forward)
    }

    /// Inverse plan from the frequency grid `source` to `target`.
    pub fn inverse(source: &Grid, target: &Grid) -> Result<Self, NormError> {
        Self::build(source, target, Direction::Inverse)
    }

    fn build(source: &Grid, target: &Grid, dir: Direction) -> Result<Self, NormError> {
        check_pair(source, target)?;
        let mut planner = FftPlanner::new();
        let sign = if dir == Direction::Forward { -1.0 } else { 1.0 };
        let mut axes = Vec::with_capacity(source.dim());
        for ax in 0..source.dim() {
            let n = source.counts()[ax];
            let nf = n as f64;
            let (lo_in, h_in) = (source.lo()[ax], source.step()[ax]);
            let (lo_out, h_out) = (target.lo()[ax], target.step()[ax]);
            // (k + 1/2)(m + 1/2)/n = km/n + k/2n + m/2n + 1/4n
            let pre = (0..n)
                .map(|k| {
                    let phase = (k as f64 + 0.5) * h_in * lo_out + k as f64 / (2.0 * nf);
                    Complex64::from_polar(1.0, sign * 2.0 * PI * phase)
                })
                .collect();
            let post = (0..n)
                .map(|m| {
                    let xi = lo_out + (m as f64 + 0.5) * h_out;
                    let phase = lo_in * xi + m as f64 / (2.0 * nf) + 0.25 / nf;
                    Complex64::from_polar(h_in, sign * 2.0 * PI * phase)
                })
                .collect();
            let fft = match dir {
                Direction::Forward => planner.plan_fft_forward(n),
                Direction::Inverse => planner.plan_fft_inverse(n),
            };
            axes.push(AxisPlan { n, pre, post, fft });
        }
        let scratch_len = axes
            .iter()
            .map(|a| a.fft.get_inplace_scratch_len())
            .max()
            .unwrap_or(0);
        Ok(Self {
            source: source.clone(),
            target: target.clone(),
            axes,
            scratch_len,
        })
    }

    pub fn source(&self) -> &Grid {
        &self.source
    }

    pub fn target(&self) -> &Grid {
        &self.target
    }

    /// Transforms `values` (laid out on the source grid) in place.
    pub fn apply_in_place(&self, values: &mut [Complex64]) {
        let counts = self.source.counts();
        let zero = Complex64::new(0.0, 0.0);
        let mut scratch = vec![zero; self.scratch_len];
        for (ax, plan) in self.axes.iter().enumerate() {
            let n = plan.n;
            let stride: usize = counts[ax + 1..].iter().product();
            let outer: usize = counts[..ax].iter().product();
            let mut line = vec![zero; n];
            for o in 0..outer {
                for s in 0..stride {
                    let base = o * n * stride + s;
                    for k in 0..n {
                        line[k] = values[base + k * stride] * plan.pre[k];
                    }
                    plan.fft.process_with_scratch(&mut line, &mut scratch);
                    for m in 0..n {
                        values[base + m * stride] = line[m] * plan.post[m];
                    }
                }
            }
        }
    }

    pub fn apply(&self, f: &SampledFunction) -> Result<SampledFunction, NormError> {
        if !f.grid().same_shape(&self.source) {
            return Err(NormError::InvalidGrid(
                "function grid does not match plan".into(),
            ));
        }
        let mut values = f.values().to_vec();
        self.apply_in_place(&mut values);
        SampledFunction::new(self.target.clone(), values)
    }
}

fn check_pair(a: &Grid, b: &Grid) -> Result<(), NormError> {
    if a.dim() != b.dim() || a.counts() != b.counts() {
        return Err(NormError::InvalidGrid(
            "transform grids differ in shape".into(),
        ));
    }
    for ax in 0..a.dim() {
        let prod = a.step()[ax] * b.step()[ax] * a.counts()[ax] as f64;
        if (prod - 1.0).abs() > 1e-9 {
            return Err(NormError::InvalidGrid(
                "transform grids are not reciprocal".into(),
            ));
        }
    }
    Ok(())
}

/// Forward transform onto the symmetric frequency grid `f.grid().dual()`.
pub fn cft(f: &SampledFunction) -> SampledFunction {
    let target = f.grid().dual();
    cft_to(f, &target).expect("dual grid is reciprocal")
}

/// Forward transform onto an arbitrary reciprocal grid.
pub fn cft_to(f: &SampledFunction, target: &Grid) -> Result<SampledFunction, NormError> {
    CftPlan::forward(f.grid(), target)?.apply(f)
}

/// Inverse transform `int F(xi) e^{2 pi i x.xi} dxi` onto `target`.
pub fn icft_to(f: &SampledFunction, target: &Grid) -> Result<SampledFunction, NormError> {
    CftPlan::inverse(f.grid(), target)?.apply(f)
}

/// Inverse transform onto the symmetric grid `f.grid().dual()`.
pub fn icft(f: &SampledFunction) -> SampledFunction {
    let target = f.grid().dual();
    icft_to(f, &target).expect("dual grid is reciprocal")
}
