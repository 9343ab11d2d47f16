//! Coverings of spaces and groups, evaluated through finite windows.
//!
//! A [`Covering`] describes an admissible covering `Q = (Q_i)` by its index
//! set, its neighbour stars `i*` and a membership test for points. All
//! global objects (nerve graph, chain metric, growth of the nerve) are
//! computed on a [`Window`], a finite set of indices, and every result
//! records which window it came from.

mod dyadic;
mod explicit;
mod grid;
mod heisenberg;
mod nerve;
mod translates;

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;
use thiserror::Error;

pub use dyadic::DyadicAnnuli;
pub use explicit::ExplicitFinite;
pub use grid::UniformGrid;
pub use heisenberg::HeisenbergCubes;
pub use nerve::{
    build_nerve, chain_distance, is_concatenation, nerve_growth_profile, set_distances, star,
    write_edge_list, ChainDistances, NerveGraph,
};
pub use translates::GroupTranslates;

use crate::groups::GroupError;

pub type Rational = Ratio<i64>;
/// Point of `R^k` with rational coordinates.
pub type RationalPoint = SmallVec<[Rational; 3]>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoverError {
    #[error("window {window} is not supported by covering {covering}")]
    UnsupportedWindow { covering: String, window: String },
    #[error("star of order {order} around {index} leaves the window")]
    WindowOverflow { index: String, order: u32 },
    #[error("points lie in different components of the windowed nerve")]
    Disconnected,
    #[error("point {0} is not covered inside the window")]
    PointOutsideWindow(String),
    #[error("index {0} is not in the window")]
    IndexOutsideWindow(String),
    #[error("invalid covering: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("i/o failure: {0}")]
    Io(String),
}

/// Finite set of indices on which a covering is evaluated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Window {
    /// Lattice indices with sup-norm at most `radius`.
    Box { radius: i64 },
    /// Scalar indices `lo..=hi`.
    Range { lo: i64, hi: i64 },
    /// Group elements of word length at most `radius`.
    Ball { radius: u32 },
    /// All indices of a finite covering.
    Full,
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Window::Box { radius } => write!(f, "box(radius={radius})"),
            Window::Range { lo, hi } => write!(f, "range({lo}..={hi})"),
            Window::Ball { radius } => write!(f, "ball(radius={radius})"),
            Window::Full => write!(f, "full"),
        }
    }
}

/// An admissible covering with decidable membership and intersection.
pub trait Covering: Sync {
    type Index: Clone + Eq + Hash + Ord + fmt::Debug + fmt::Display + Send + Sync;
    type Point: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn describe(&self) -> String;

    /// Indices inside `window`, in a deterministic order.
    fn window_indices(&self, window: &Window) -> Result<Vec<Self::Index>, CoverError>;

    /// The full neighbour set `i* = { j : Q_i meets Q_j }`, including `i`.
    fn neighbours(&self, i: &Self::Index) -> Vec<Self::Index>;

    fn intersects(&self, a: &Self::Index, b: &Self::Index) -> bool;

    fn contains(&self, i: &Self::Index, x: &Self::Point) -> bool;

    /// All `i` with `x in Q_i`.
    fn containing(&self, x: &Self::Point) -> Vec<Self::Index>;

    /// A few points of `Q_i`, used for sampling maps between coverings.
    fn representative_points(&self, i: &Self::Index) -> Vec<Self::Point>;

    /// How far `x` sits from the middle of `Q_i`; smaller is more central.
    fn centrality(&self, i: &Self::Index, x: &Self::Point) -> f64;
}

/// Integer lattice index, printed as `(a;b;c)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeIndex(pub SmallVec<[i64; 4]>);

impl LatticeIndex {
    pub fn new(coords: &[i64]) -> Self {
        Self(coords.iter().copied().collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for LatticeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(";")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for LatticeIndex {
    type Err = CoverError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CoverError::InvalidSpec(format!("cannot parse lattice index {s:?}"));
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(bad)?;
        let coords = inner
            .split(';')
            .map(|t| t.trim().parse::<i64>().map_err(|_| bad()))
            .collect::<Result<SmallVec<_>, _>>()?;
        Ok(Self(coords))
    }
}

/// Declarative covering description used by run configs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CoveringSpec {
    UniformGrid {
        dim: usize,
    },
    DyadicAnnuli {
        dim: usize,
        #[serde(default = "one")]
        power: u32,
    },
    HeisenbergCubes,
    /// Balls of radius `radius` around every element of a named group.
    GroupTranslates {
        group: String,
        radius: u32,
    },
    ExplicitFinite {
        ground: Vec<u32>,
        elements: Vec<Vec<u32>>,
    },
}

fn one() -> u32 {
    1
}

pub(crate) fn unsupported(covering: &str, window: &Window) -> CoverError {
    CoverError::UnsupportedWindow {
        covering: covering.to_string(),
        window: window.to_string(),
    }
}

/// Candidate integer cells for a closed unit interval containing `t`:
/// `floor(t)`, plus `t - 1` when `t` is an integer.
pub(crate) fn unit_cells(t: Rational) -> SmallVec<[i64; 2]> {
    let f = t.floor().to_integer();
    if t.is_integer() {
        smallvec::smallvec![f - 1, f]
    } else {
        smallvec::smallvec![f]
    }
}

/// Cartesian product of per-axis candidate lists.
pub(crate) fn cartesian(axes: &[SmallVec<[i64; 2]>]) -> Vec<SmallVec<[i64; 4]>> {
    let mut out: Vec<SmallVec<[i64; 4]>> = vec![SmallVec::new()];
    for axis in axes {
        let mut next = Vec::with_capacity(out.len() * axis.len());
        for prefix in &out {
            for &v in axis {
                let mut p = prefix.clone();
                p.push(v);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// All integer vectors in `[-r, r]^k`, lexicographic.
pub(crate) fn lattice_box(dim: usize, r: i64) -> Vec<SmallVec<[i64; 4]>> {
    let axis: Vec<i64> = (-r..=r).collect();
    let mut out: Vec<SmallVec<[i64; 4]>> = vec![SmallVec::new()];
    for _ in 0..dim {
        let mut next = Vec::with_capacity(out.len() * axis.len());
        for prefix in &out {
            for &v in &axis {
                let mut p = prefix.clone();
                p.push(v);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// Builds a rational point from integer numerators over a common
/// denominator.
pub fn rational_point(nums: &[i64], denom: i64) -> RationalPoint {
    nums.iter().map(|&n| Ratio::new(n, denom)).collect()
}
