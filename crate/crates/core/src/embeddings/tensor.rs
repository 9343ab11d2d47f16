//! Tensor lifts between modulation spaces of different dimension.
//!
//! `Gamma_n^m f = F_m^{-1}(F_n f (x) eta (x) ... (x) eta)`, which equals
//! `f (x) F^{-1} eta (x) ...`. With the standard Gaussian window the
//! transform of `f (x) eta` factorises, so its modulation norm is the product
//! of the two one-dimensional norms.

use serde::{Deserialize, Serialize};

use super::EmbeddingError;
use crate::decomposition::{
    cft, icft_to, modulation_norm, modulation_norm_refined, standard_gaussian, Grid,
    ModulationResult, SampledFunction, Sampler, StftLattice,
};

/// `Gamma_n^m f`, with each new axis sampled on the one-dimensional space
/// grid `extra` and `eta` given on its reciprocal frequency grid.
pub fn gamma_lift<E: Sampler + ?Sized>(
    f: &SampledFunction,
    eta: &E,
    extra: &Grid,
    m: usize,
) -> Result<SampledFunction, EmbeddingError> {
    if extra.dim() != 1 || eta.dim() != 1 {
        return Err(EmbeddingError::InvalidInput(
            "eta and the extra axis must be one-dimensional".into(),
        ));
    }
    if m < f.dim() {
        return Err(EmbeddingError::InvalidInput(format!(
            "cannot lift from dimension {} to {m}",
            f.dim()
        )));
    }
    let freq = extra.dual();
    let eta_hat = eta.sample(&freq);
    let mut spectrum = cft(f);
    let mut space = f.grid().clone();
    for _ in f.dim()..m {
        spectrum = spectrum.tensor(&eta_hat);
        space = space.product(extra);
    }
    Ok(icft_to(&spectrum, &space)?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TensorReport {
    pub f_norm: ModulationResult,
    pub eta_norm: ModulationResult,
    /// Two-dimensional norm of `f (x) eta` on the finer grid.
    pub product_norm: f64,
    pub predicted: f64,
    pub relative_error: f64,
}

/// Compares `||f (x) eta||_{M^{p,q}(R^2)}` with
/// `||f||_{M^{p,q}(R)} ||eta||_{M^{p,q}(R)}`.
#[allow(clippy::too_many_arguments)]
pub fn tensor_embedding<F: Sampler + ?Sized, E: Sampler + ?Sized>(
    f: &F,
    eta: &E,
    half_width: f64,
    h: f64,
    lattice: &StftLattice,
    p: f64,
    q: f64,
    tol: f64,
) -> Result<TensorReport, EmbeddingError> {
    if f.dim() != 1 || eta.dim() != 1 {
        return Err(EmbeddingError::InvalidInput(
            "f and eta must be one-dimensional".into(),
        ));
    }
    let g1 = standard_gaussian(1);
    let f_norm = modulation_norm_refined(f, &g1, half_width, h, lattice, p, q, tol)?;
    let eta_norm = modulation_norm_refined(eta, &g1, half_width, h, lattice, p, q, tol)?;

    let fine = Grid::symmetric(1, half_width, f_norm.h)?;
    let product = f.sample(&fine).tensor(&eta.sample(&fine));
    let window = standard_gaussian(2).sample(product.grid());
    let product_norm = modulation_norm(&product, &window, lattice, p, q)?;
    let predicted = f_norm.value * eta_norm.value;
    let scale = predicted.abs().max(product_norm.abs());
    let relative_error = if scale == 0.0 {
        0.0
    } else {
        (product_norm - predicted).abs() / scale
    };
    Ok(TensorReport {
        f_norm,
        eta_norm,
        product_norm,
        predicted,
        relative_error,
    })
}
