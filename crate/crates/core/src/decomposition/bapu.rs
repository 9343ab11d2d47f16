//! Bounded admissible partitions of unity for the uniform grid and the
//! dyadic annuli.
//!
//! Neither family is supported inside the closed sets `Q_i` themselves:
//! continuous functions summing to one cannot vanish outside touching closed
//! cubes. Supports lie in the one-step neighbourhood `Q_i^*` instead, which
//! is all the decomposition norms need. The dyadic family does sit inside
//! its annuli.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use super::NormError;
use crate::covered_space::{CoveringSpec, DyadicAnnuli, LatticeIndex, UniformGrid};

/// A partition of unity evaluable pointwise.
pub trait Bapu: Sync {
    type Index: Clone + Eq + Hash + Ord + Debug + Display + Send + Sync;

    fn describe(&self) -> String;
    fn dim(&self) -> usize;
    fn eval(&self, i: &Self::Index, x: &[f64]) -> f64;
    /// Axis-aligned box containing `supp phi_i`.
    fn support_box(&self, i: &Self::Index) -> (Vec<f64>, Vec<f64>);
    /// Indices whose support meets the box `[lo, hi]`.
    fn indices_meeting(&self, lo: &[f64], hi: &[f64]) -> Vec<Self::Index>;
    /// Indices `j` with `supp phi_i` and `supp phi_j` overlapping.
    fn neighbours(&self, i: &Self::Index) -> Vec<Self::Index>;
    /// Sup norm plus total variation along each axis.
    fn algebra_norm_surrogate(&self, i: &Self::Index) -> f64;
    /// Dyadic level of the index, if the family is dyadic.
    fn level(&self, i: &Self::Index) -> Option<u32>;
}

/// Smoothness of the ramps in a partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Order {
    One,
    Two,
}

impl Order {
    pub fn from_u32(k: u32) -> Result<Self, NormError> {
        match k {
            1 => Ok(Order::One),
            2 => Ok(Order::Two),
            _ => Err(NormError::UnsupportedCovering(format!("bump order {k}"))),
        }
    }
}

/// Tensor-product B-spline partition on `Z^k`.
///
/// Order one: hats `max(0, 1 - |t - n|)`, support `[n - 1, n + 1]`.
/// Order two: quadratic B-splines centred at `n + 1/2`, support `[n - 1, n + 2]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridBapu {
    dim: usize,
    order: Order,
}

fn hat(t: f64) -> f64 {
    (1.0 - t.abs()).max(0.0)
}

fn quadratic_spline(t: f64) -> f64 {
    let a = t.abs();
    if a <= 0.5 {
        0.75 - a * a
    } else if a <= 1.5 {
        0.5 * (1.5 - a) * (1.5 - a)
    } else {
        0.0
    }
}

impl GridBapu {
    pub fn new(dim: usize, order: Order) -> Result<Self, NormError> {
        if dim == 0 {
            return Err(NormError::UnsupportedCovering("grid of dimension 0".into()));
        }
        Ok(Self { dim, order })
    }

    pub fn covering(&self) -> UniformGrid {
        UniformGrid::new(self.dim).expect("positive dimension")
    }

    fn factor(&self, t: f64, n: i64) -> f64 {
        match self.order {
            Order::One => hat(t - n as f64),
            Order::Two => quadratic_spline(t - n as f64 - 0.5),
        }
    }

    /// Support of the one-dimensional factor relative to `n`.
    fn reach(&self) -> (f64, f64) {
        match self.order {
            Order::One => (-1.0, 1.0),
            Order::Two => (-1.0, 2.0),
        }
    }
}

impl Bapu for GridBapu {
    type Index = LatticeIndex;

    fn describe(&self) -> String {
        let kind = match self.order {
            Order::One => "hat",
            Order::Two => "quadratic B-spline",
        };
        format!("{kind} partition on the unit grid of R^{}", self.dim)
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, i: &LatticeIndex, x: &[f64]) -> f64 {
        i.0.iter()
            .zip(x)
            .map(|(&n, &t)| self.factor(t, n))
            .product()
    }

    fn support_box(&self, i: &LatticeIndex) -> (Vec<f64>, Vec<f64>) {
        let (a, b) = self.reach();
        (
            i.0.iter().map(|&n| n as f64 + a).collect(),
            i.0.iter().map(|&n| n as f64 + b).collect(),
        )
    }

    fn indices_meeting(&self, lo: &[f64], hi: &[f64]) -> Vec<LatticeIndex> {
        let (a, b) = self.reach();
        // open supports: n + a < hi and n + b > lo
        let axes: Vec<(i64, i64)> = lo
            .iter()
            .zip(hi)
            .map(|(&l, &h)| ((l - b).floor() as i64 + 1, (h - a).ceil() as i64 - 1))
            .collect();
        let mut out: Vec<SmallVec<[i64; 4]>> = vec![SmallVec::new()];
        for &(from, to) in &axes {
            let mut next = Vec::new();
            for p in &out {
                for v in from..=to {
                    let mut q = p.clone();
                    q.push(v);
                    next.push(q);
                }
            }
            out = next;
        }
        out.into_iter().map(LatticeIndex).collect()
    }

    fn neighbours(&self, i: &LatticeIndex) -> Vec<LatticeIndex> {
        let (lo, hi) = self.support_box(i);
        self.indices_meeting(&lo, &hi)
    }

    fn algebra_norm_surrogate(&self, _i: &LatticeIndex) -> f64 {
        match self.order {
            Order::One => 1.0 + 2.0 * self.dim as f64,
            Order::Two => 0.75 + 1.5 * self.dim as f64,
        }
    }

    fn level(&self, _i: &LatticeIndex) -> Option<u32> {
        None
    }
}

/// Radial dyadic partition in `rho = |x|^power`.
///
/// `chi_m(rho)` is one below `2^{m+1}(1 - eps)` and zero above `2^{m+1}`,
/// joined by a smoothstep. `phi_0 = chi_0` and `phi_m = chi_m - chi_{m-1}`,
/// so `supp phi_m = [2^m (1 - eps), 2^{m+1}]` lies inside the closed annulus
/// `2^{m-1} <= rho <= 2^{m+1}` and the sum telescopes to one.
#[derive(Debug, Clone, PartialEq)]
pub struct DyadicBapu {
    dim: usize,
    power: u32,
    eps: f64,
    order: Order,
}

/// Largest dyadic level considered.
const MAX_LEVEL: u32 = 200;

impl DyadicBapu {
    pub fn new(dim: usize, power: u32, eps: f64, order: Order) -> Result<Self, NormError> {
        if dim == 0 || power == 0 || !(eps > 0.0 && eps <= 0.5) {
            return Err(NormError::UnsupportedCovering(format!(
                "dyadic partition needs dim, power >= 1 and eps in (0, 1/2] (eps = {eps})"
            )));
        }
        Ok(Self {
            dim,
            power,
            eps,
            order,
        })
    }

    pub fn covering(&self) -> DyadicAnnuli {
        DyadicAnnuli::new(self.dim, self.power).expect("validated")
    }

    pub fn power(&self) -> u32 {
        self.power
    }

    fn smoothstep(&self, t: f64) -> f64 {
        let t = t.clamp(0.0, 1.0);
        match self.order {
            Order::One => t * t * (3.0 - 2.0 * t),
            Order::Two => t * t * t * (t * (6.0 * t - 15.0) + 10.0),
        }
    }

    fn chi(&self, m: u32, rho: f64) -> f64 {
        let b = 2f64.powi(m as i32 + 1);
        let a = b * (1.0 - self.eps);
        1.0 - self.smoothstep((rho - a) / (b - a))
    }

    /// `phi_m` as a function of `rho`.
    pub fn profile(&self, m: u32, rho: f64) -> f64 {
        if m == 0 {
            self.chi(0, rho)
        } else {
            (self.chi(m, rho) - self.chi(m - 1, rho)).max(0.0)
        }
    }

    pub fn rho(&self, x: &[f64]) -> f64 {
        x.iter()
            .map(|t| t * t)
            .sum::<f64>()
            .sqrt()
            .powi(self.power as i32)
    }

    /// `[rho_lo, rho_hi]` support of `phi_m`.
    pub fn rho_support(&self, m: u32) -> (f64, f64) {
        let hi = 2f64.powi(m as i32 + 1);
        let lo = if m == 0 {
            0.0
        } else {
            2f64.powi(m as i32) * (1.0 - self.eps)
        };
        (lo, hi)
    }
}

impl Bapu for DyadicBapu {
    type Index = u32;

    fn describe(&self) -> String {
        format!(
            "dyadic partition on R^{} in |x|^{} (eps = {})",
            self.dim, self.power, self.eps
        )
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, i: &u32, x: &[f64]) -> f64 {
        self.profile(*i, self.rho(x))
    }

    fn support_box(&self, i: &u32) -> (Vec<f64>, Vec<f64>) {
        let r = self.rho_support(*i).1.powf(1.0 / self.power as f64);
        (vec![-r; self.dim], vec![r; self.dim])
    }

    fn indices_meeting(&self, lo: &[f64], hi: &[f64]) -> Vec<u32> {
        let near: f64 = lo
            .iter()
            .zip(hi)
            .map(|(&a, &b)| {
                if a > 0.0 {
                    a
                } else if b < 0.0 {
                    -b
                } else {
                    0.0
                }
            })
            .map(|t| t * t)
            .sum::<f64>()
            .sqrt();
        let far: f64 = lo
            .iter()
            .zip(hi)
            .map(|(&a, &b)| a.abs().max(b.abs()))
            .map(|t| t * t)
            .sum::<f64>()
            .sqrt();
        let (rmin, rmax) = (near.powi(self.power as i32), far.powi(self.power as i32));
        (0..=MAX_LEVEL)
            .filter(|&m| {
                let (a, b) = self.rho_support(m);
                rmin < b && (m == 0 || a < rmax)
            })
            .collect()
    }

    fn neighbours(&self, i: &u32) -> Vec<u32> {
        (i.saturating_sub(1)..=i + 1).collect()
    }

    fn algebra_norm_surrogate(&self, i: &u32) -> f64 {
        if *i == 0 {
            2.0
        } else {
            3.0
        }
    }

    fn level(&self, i: &u32) -> Option<u32> {
        Some(*i)
    }
}

/// Partition built from a covering description.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyBapu {
    Grid(GridBapu),
    Dyadic(DyadicBapu),
}

/// Builds the standard partition for a uniform grid or dyadic covering.
pub fn build_bapu(spec: &CoveringSpec, order: u32, eps: f64) -> Result<AnyBapu, NormError> {
    let order = Order::from_u32(order)?;
    match *spec {
        CoveringSpec::UniformGrid { dim } => Ok(AnyBapu::Grid(GridBapu::new(dim, order)?)),
        CoveringSpec::DyadicAnnuli { dim, power } => {
            Ok(AnyBapu::Dyadic(DyadicBapu::new(dim, power, eps, order)?))
        }
        ref other => Err(NormError::UnsupportedCovering(format!("{other:?}"))),
    }
}
