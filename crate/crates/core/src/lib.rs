//! Large-scale geometry of coverings and finitely generated groups, together
//! with numerical decomposition-space norms.
//!
//! The crate is organised around five areas:
//!
//! * [`covered_space`]: coverings evaluated through finite windows, their
//!   nerve graphs, neighbour stars and the chain metric.
//! * [`groups`]: exact-arithmetic group models, word metrics and balls.
//! * [`invariants`]: quasi-isometry invariant probes (growth, four-point
//!   hyperbolicity, coarse connectedness, finite-scale dimension bounds) and
//!   the nilpotent growth-order formulas.
//! * [`decomposition`]: partitions of unity, decomposition norms, the
//!   short-time Fourier transform and modulation norms, Besov-type norms and
//!   Haar-measure quadrature on `SL(2,R)`.
//! * [`embeddings`]: quasi-isometry parameter fitting, adapted supports and
//!   the geometric-embedding condition.
//!
//! Everything computed on an infinite object carries the finite window it was
//! evaluated on.

pub mod covered_space;
pub mod decomposition;
pub mod embeddings;
pub mod groups;
pub mod invariants;
pub mod io;
pub mod metric;

pub use covered_space::{build_nerve, chain_distance, Covering, CoveringSpec, NerveGraph, Window};
pub use decomposition::{GlobalNorm, Grid, NormResult, SampledFunction};
pub use embeddings::{EmbeddingReport, MapSample, QiWitness};
pub use groups::{GeneratingSet, Group, GroupModel};
pub use invariants::{GrowthClassification, GrowthProfile, HyperbolicityProfile};
pub use metric::DistanceMatrix;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
