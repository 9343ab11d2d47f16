//! Short-time Fourier transform and mixed modulation norms.
//!
//! `V_g f(x, w) = int f(t) conj(g(t - x)) e^{-2 pi i t.w} dt`. The window
//! is shifted by whole grid cells, so the time lattice is
//! `x_j = j * stride * h`, and each shift costs one transform onto the
//! reciprocal frequency grid.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::fourier::CftPlan;
use super::grid::{Grid, SampledFunction};
use super::presets::Sampler;
use super::{check_exponent, NormError};

/// Time lattice of the transform.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StftLattice {
    /// Shift step in grid cells.
    pub stride: usize,
    /// Largest shift `|x_j|` along each axis.
    pub max_shift: f64,
}

/// Samples of `V_g f`; `values[s * freq.len() + k]` belongs to shift `s`
/// (row-major over `shifts`) and frequency point `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct StftSamples {
    pub shifts: Vec<Vec<f64>>,
    pub freq: Grid,
    pub values: Vec<Complex64>,
}

impl StftSamples {
    pub fn shift_count(&self) -> usize {
        self.shifts.iter().map(Vec::len).product()
    }

    pub fn at(&self, shift: usize, freq: usize) -> Complex64 {
        self.values[shift * self.freq.len() + freq]
    }
}

struct Setup<'a> {
    f: &'a SampledFunction,
    g: &'a SampledFunction,
    stride: usize,
    /// Shift numbers `j` per axis.
    steps: Vec<Vec<i64>>,
    plan: CftPlan,
}

impl<'a> Setup<'a> {
    fn new(
        f: &'a SampledFunction,
        g: &'a SampledFunction,
        lattice: &StftLattice,
    ) -> Result<Self, NormError> {
        let grid = f.grid();
        if !grid.same_shape(g.grid()) {
            return Err(NormError::InvalidGrid(
                "f and the window use different grids".into(),
            ));
        }
        let hi = grid.hi();
        if (0..grid.dim()).any(|a| (grid.lo()[a] + hi[a]).abs() > 1e-9 * hi[a].abs().max(1.0)) {
            return Err(NormError::InvalidGrid(
                "the transform needs a box symmetric about 0".into(),
            ));
        }
        if lattice.stride == 0 || lattice.max_shift.is_nan() || lattice.max_shift < 0.0 {
            return Err(NormError::InvalidInput(
                "stride must be positive, max_shift non-negative".into(),
            ));
        }
        if g.sup_norm() == 0.0 {
            return Err(NormError::InvalidInput("window g is zero".into()));
        }
        let steps = (0..grid.dim())
            .map(|a| {
                let dx = lattice.stride as f64 * grid.step()[a];
                let jmax = (lattice.max_shift / dx + 1e-9).floor() as i64;
                (-jmax..=jmax).collect()
            })
            .collect();
        let plan = CftPlan::forward(grid, &grid.dual())?;
        Ok(Self {
            f,
            g,
            stride: lattice.stride,
            steps,
            plan,
        })
    }

    fn shifts(&self) -> Vec<Vec<f64>> {
        let grid = self.f.grid();
        self.steps
            .iter()
            .enumerate()
            .map(|(a, js)| {
                js.iter()
                    .map(|&j| j as f64 * self.stride as f64 * grid.step()[a])
                    .collect()
            })
            .collect()
    }

    fn x_weight(&self) -> f64 {
        self.f
            .grid()
            .step()
            .iter()
            .map(|h| self.stride as f64 * h)
            .product()
    }

    /// Shift vectors (in cells) whose first component is `self.steps[0][row]`.
    fn row(&self, row: usize) -> Vec<Vec<i64>> {
        let mut out = vec![vec![self.steps[0][row] * self.stride as i64]];
        for js in &self.steps[1..] {
            let mut next = Vec::with_capacity(out.len() * js.len());
            for p in &out {
                for &j in js {
                    let mut q = p.clone();
                    q.push(j * self.stride as i64);
                    next.push(q);
                }
            }
            out = next;
        }
        out
    }

    /// `F(f * conj(g(. - x)))` for the shift `cells`, written into `buf`.
    fn transform(&self, cells: &[i64], buf: &mut [Complex64]) {
        let counts = self.f.grid().counts();
        let dim = counts.len();
        let (fv, gv) = (self.f.values(), self.g.values());
        let mut idx = vec![0usize; dim];
        for (flat, slot) in buf.iter_mut().enumerate() {
            let mut src = 0usize;
            let mut inside = true;
            for a in 0..dim {
                let s = idx[a] as i64 - cells[a];
                if s < 0 || s >= counts[a] as i64 {
                    inside = false;
                    break;
                }
                src = src * counts[a] + s as usize;
            }
            *slot = if inside {
                fv[flat] * gv[src].conj()
            } else {
                Complex64::new(0.0, 0.0)
            };
            for a in (0..dim).rev() {
                idx[a] += 1;
                if idx[a] < counts[a] {
                    break;
                }
                idx[a] = 0;
            }
        }
        self.plan.apply_in_place(buf);
    }
}

/// Samples `V_g f` on the shift lattice times the reciprocal frequency grid.
pub fn stft(
    f: &SampledFunction,
    g: &SampledFunction,
    lattice: &StftLattice,
) -> Result<StftSamples, NormError> {
    let setup = Setup::new(f, g, lattice)?;
    let n = f.grid().len();
    let rows: Vec<Vec<Complex64>> = (0..setup.steps[0].len())
        .into_par_iter()
        .map(|r| {
            let shifts = setup.row(r);
            let mut out = vec![Complex64::new(0.0, 0.0); shifts.len() * n];
            for (k, cells) in shifts.iter().enumerate() {
                setup.transform(cells, &mut out[k * n..(k + 1) * n]);
            }
            out
        })
        .collect();
    Ok(StftSamples {
        shifts: setup.shifts(),
        freq: setup.plan.target().clone(),
        values: rows.concat(),
    })
}

/// `||V_g f||_{L^{p,q}}`: inner `L^p` over time, outer `L^q` over frequency.
pub fn modulation_norm(
    f: &SampledFunction,
    g: &SampledFunction,
    lattice: &StftLattice,
    p: f64,
    q: f64,
) -> Result<f64, NormError> {
    check_exponent("p", p)?;
    check_exponent("q", q)?;
    let setup = Setup::new(f, g, lattice)?;
    let n = f.grid().len();
    let rows: Vec<Vec<f64>> = (0..setup.steps[0].len())
        .into_par_iter()
        .map(|r| {
            let mut acc = vec![0.0; n];
            let mut buf = vec![Complex64::new(0.0, 0.0); n];
            for cells in setup.row(r) {
                setup.transform(&cells, &mut buf);
                for (a, v) in acc.iter_mut().zip(&buf) {
                    *a += v.norm().powf(p);
                }
            }
            acc
        })
        .collect();
    let mut acc = vec![0.0; n];
    for row in &rows {
        for (a, v) in acc.iter_mut().zip(row) {
            *a += v;
        }
    }
    let dx = setup.x_weight();
    let dw = setup.plan.target().cell_volume();
    let outer: f64 = acc.iter().map(|a| (a * dx).powf(q / p)).sum();
    Ok((outer * dw).powf(1.0 / q))
}

/// A modulation norm accepted by the refinement check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModulationResult {
    pub value: f64,
    pub coarse_value: f64,
    pub relative_change: f64,
    pub tolerance: f64,
    pub p: f64,
    pub q: f64,
    pub half_width: f64,
    pub h: f64,
    pub stride: usize,
    pub max_shift: f64,
    pub scheme: String,
}

/// Computes the modulation norm of analytic `f` with window `g` on
/// `[-half_width, half_width]^n` at spacing `h` and `h / 2` (same stride in
/// cells) and accepts the finer value if the relative change is within `tol`.
#[allow(clippy::too_many_arguments)]
pub fn modulation_norm_refined<F: Sampler + ?Sized, G: Sampler + ?Sized>(
    f: &F,
    g: &G,
    half_width: f64,
    h: f64,
    lattice: &StftLattice,
    p: f64,
    q: f64,
    tol: f64,
) -> Result<ModulationResult, NormError> {
    if f.dim() != g.dim() {
        return Err(NormError::InvalidInput(
            "f and the window differ in dimension".into(),
        ));
    }
    let run = |h: f64| -> Result<f64, NormError> {
        let grid = Grid::symmetric(f.dim(), half_width, h)?;
        let fs = SampledFunction::from_fn(grid.clone(), |x| f.eval(x));
        let gs = SampledFunction::from_fn(grid, |x| g.eval(x));
        modulation_norm(&fs, &gs, lattice, p, q)
    };
    let coarse = run(h)?;
    let value = run(h / 2.0)?;
    let change = (value - coarse).abs() / value.abs().max(f64::MIN_POSITIVE);
    if change > tol {
        return Err(NormError::GridTooCoarse { change, tol });
    }
    Ok(ModulationResult {
        value,
        coarse_value: coarse,
        relative_change: change,
        tolerance: tol,
        p,
        q,
        half_width,
        h: h / 2.0,
        stride: lattice.stride,
        max_shift: lattice.max_shift,
        scheme: "cell-shift lattice with midpoint transform".into(),
    })
}
