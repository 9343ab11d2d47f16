//! Quasi-isometry parameters of sampled maps and geometric embeddings of
//! decomposition spaces.
//!
//! All checks here are sampled: a passing check is evidence on a finite test
//! family, never a proof, and the reports say so.

mod dyadic_power;
mod index_map;
mod qi;
mod support;
mod tensor;

use thiserror::Error;

pub use dyadic_power::{dyadic_power_embedding, PowerEmbeddingOptions, PowerEmbeddingReport};
pub use index_map::{induced_index_map, IndexMapReport, IndexMapVerdict};
pub use qi::{fit_qi_parameters, MapSample, PairViolation, QiWitness, BISECTION_RESOLUTION};
pub use support::{
    adapted_support, geometric_condition_check, AdaptedSupport, EmbeddingReport, SupportSpace,
    DEFAULT_SUPPORT_TOL,
};
pub use tensor::{gamma_lift, tensor_embedding, TensorReport};

use crate::covered_space::CoverError;
use crate::decomposition::NormError;
use crate::metric::MetricViolation;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EmbeddingError {
    #[error("all source points coincide")]
    DegenerateSample,
    #[error("need at least two pairs, got {0}")]
    TooFewPairs(usize),
    #[error("image of test function {0} has empty adapted support")]
    EmptySupport(usize),
    #[error("target indices {missing:?} are not hit by the sampled map")]
    NotSurjectiveOnWindow { missing: Vec<String> },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Metric(#[from] MetricViolation),
    #[error(transparent)]
    Norm(#[from] NormError),
    #[error(transparent)]
    Cover(#[from] CoverError),
}
