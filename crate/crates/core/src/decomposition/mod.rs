//! Decomposition-space norms of sampled functions.
//!
//! Functions live on cell-centred grids. Local pieces `f * phi_i` are
//! measured in `L^p` or, for the Fourier-type spaces, through the inverse
//! transform; the local values are then combined in a weighted `l^q` norm.
//! Every result carries the grid, the box and the refinement check that
//! accepted it.

mod bapu;
mod besov;
mod fourier;
mod grid;
mod iwasawa;
mod norms;
mod presets;
mod stft;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use bapu::{build_bapu, AnyBapu, Bapu, DyadicBapu, GridBapu, Order};
pub use besov::{besov_norm, besov_norm_refined};
pub use fourier::{cft, cft_to, icft, icft_to, CftPlan};
pub use grid::{Grid, SampledFunction};
pub use iwasawa::{sl2_l1_norm, IwasawaDomain, IwasawaFunction, IwasawaResult};
pub use norms::{
    clustering_map, decomposition_norm, decomposition_norm_refined, local_norm, GlobalNorm,
    LocalNorm, NormMetadata, NormResult, Weight,
};
pub use presets::{standard_gaussian, Preset, Sampler};
pub use stft::{
    modulation_norm, modulation_norm_refined, stft, ModulationResult, StftLattice, StftSamples,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NormError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("unsupported covering: {0}")]
    UnsupportedCovering(String),
    #[error("grid too coarse: halving h changed the value by {change:e} (tolerance {tol:e})")]
    GridTooCoarse { change: f64, tol: f64 },
    #[error("truncation tail {tail:e} exceeds tolerance {tol:e}")]
    TruncationDominates { tail: f64, tol: f64 },
    #[error("sequence has {got} entries, nerve has {expected}")]
    IndexMismatch { expected: usize, got: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// How a local piece `f * phi_i` is measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormMode {
    /// `||f phi_i||_{L^p}`.
    Lp,
    /// `||F^{-1}(f phi_i)||_{L^p}`, with `f` given on the frequency side.
    FLp,
}

pub(crate) fn check_exponent(name: &str, p: f64) -> Result<(), NormError> {
    if p >= 1.0 && p.is_finite() {
        Ok(())
    } else {
        Err(NormError::InvalidInput(format!(
            "{name} = {p} is not in [1, inf)"
        )))
    }
}
