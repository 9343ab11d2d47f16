//! Run configuration: named objects plus one section per command.
//!
//! Parsing rejects unknown fields; numeric ranges are checked by each command
//! before it computes. Either way a bad config exits with the config-error
//! code.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use coarse_core::covered_space::{CoveringSpec, Window};
use coarse_core::decomposition::{
    IwasawaDomain, IwasawaFunction, NormMode, Preset, SampledFunction, Sampler, Weight,
};
use coarse_core::embeddings::PowerEmbeddingOptions;
use coarse_core::groups::GroupSpec;
use serde::Deserialize;

use crate::error::CliError;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub groups: BTreeMap<String, GroupSpec>,
    #[serde(default)]
    pub coverings: BTreeMap<String, CoveringSpec>,
    #[serde(default)]
    pub functions: BTreeMap<String, FunctionSource>,
    #[serde(default)]
    pub maps: BTreeMap<String, MapSource>,
    pub seed: Option<u64>,
    pub budget: Option<usize>,
    pub out: Option<PathBuf>,
    pub growth: Option<GrowthParams>,
    pub delta: Option<DeltaParams>,
    pub dist: Option<DistParams>,
    pub nerve: Option<NerveParams>,
    pub norm: Option<NormParams>,
    pub obstruct: Option<ObstructParams>,
    pub qi_fit: Option<QiFitParams>,
    pub embed_check: Option<EmbedParams>,
}

/// A function given by a preset or by a CSV file of `coords...,re,im` rows.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum FunctionSource {
    Csv { csv: PathBuf },
    Preset(Preset),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum PointMetric {
    #[default]
    Euclidean,
    Chebyshev,
    Manhattan,
}

impl PointMetric {
    pub fn distance(self, a: &[f64], b: &[f64]) -> f64 {
        let d = a.iter().zip(b).map(|(x, y)| (x - y).abs());
        match self {
            PointMetric::Euclidean => d.map(|t| t * t).sum::<f64>().sqrt(),
            PointMetric::Chebyshev => d.fold(0.0, f64::max),
            PointMetric::Manhattan => d.sum(),
        }
    }
}

/// Sampled map `x -> y`, given inline or as CSV rows `x..., y...`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSource {
    #[serde(default)]
    pub pairs: Vec<(Vec<f64>, Vec<f64>)>,
    pub csv: Option<PathBuf>,
    pub source_dim: Option<usize>,
    #[serde(default)]
    pub source_metric: PointMetric,
    #[serde(default)]
    pub target_metric: PointMetric,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GrowthParams {
    pub group: Option<String>,
    pub covering: Option<String>,
    pub window: Option<Window>,
    pub r_max: u32,
    #[serde(default = "default_tail")]
    pub tail_fraction: f64,
}

fn default_tail() -> f64 {
    coarse_core::invariants::DEFAULT_TAIL_FRACTION
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeltaParams {
    pub group: String,
    pub radii: Vec<u32>,
    pub exhaustive_limit: Option<usize>,
    pub samples: Option<usize>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistParams {
    pub group: Option<String>,
    pub covering: Option<String>,
    pub window: Option<Window>,
    /// Element strings for groups; coordinate lists (numbers or `"p/q"`)
    /// for geometric coverings; integers for finite ones.
    pub pairs: Vec<(serde_json::Value, serde_json::Value)>,
    #[serde(default = "default_cap")]
    pub cap: u32,
}

fn default_cap() -> u32 {
    32
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NerveParams {
    pub covering: String,
    pub window: Window,
    /// Also report nerve ball sizes around the origin index up to this radius.
    pub growth_radius: Option<u32>,
    /// Radius used for the end count around the origin index.
    pub ends_radius: Option<u32>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum NormParams {
    Decomposition {
        function: String,
        covering: String,
        #[serde(default = "default_order")]
        order: u32,
        #[serde(default = "default_eps")]
        eps: f64,
        p: f64,
        q: f64,
        #[serde(default = "default_mode")]
        mode: NormMode,
        #[serde(default = "unit_weight")]
        weight: Weight,
        #[serde(default)]
        grid: GridParams,
        #[serde(default = "default_tol")]
        tol: f64,
    },
    Modulation {
        function: String,
        /// Window function; the standard Gaussian when absent.
        window: Option<String>,
        #[serde(default)]
        grid: GridParams,
        #[serde(default = "default_stride")]
        stride: usize,
        max_shift: Option<f64>,
        p: f64,
        q: f64,
        #[serde(default = "default_tol")]
        tol: f64,
    },
    Besov {
        function: String,
        #[serde(default = "one")]
        power: u32,
        #[serde(default = "default_order")]
        order: u32,
        #[serde(default = "default_eps")]
        eps: f64,
        s: f64,
        p: f64,
        q: f64,
        #[serde(default)]
        grid: GridParams,
        #[serde(default = "default_tol")]
        tol: f64,
    },
    Iwasawa {
        #[serde(default = "iwasawa_example")]
        function: IwasawaFunction,
        #[serde(default)]
        domain: IwasawaDomain,
        #[serde(default = "default_tol")]
        tol: f64,
    },
}

/// Symmetric sampling box `[-half_width, half_width]^d` with spacing `h`.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridParams {
    pub half_width: f64,
    pub h: f64,
}

impl Default for GridParams {
    fn default() -> Self {
        Self {
            half_width: 6.0,
            h: 0.125,
        }
    }
}

fn default_order() -> u32 {
    2
}

fn default_eps() -> f64 {
    0.25
}

fn default_mode() -> NormMode {
    NormMode::Lp
}

fn unit_weight() -> Weight {
    Weight::Unit
}

fn default_tol() -> f64 {
    1e-4
}

fn default_stride() -> usize {
    2
}

fn one() -> u32 {
    1
}

fn iwasawa_example() -> IwasawaFunction {
    IwasawaFunction::PowerExp { k: 2 }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObstructParams {
    pub spaces: Vec<SpaceDecl>,
}

/// A space for the obstruction matrix: a group (word metric) or a covering
/// (nerve metric on a window).
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDecl {
    pub name: String,
    pub group: Option<String>,
    pub covering: Option<String>,
    pub window: Option<Window>,
    pub r_max: u32,
    #[serde(default = "default_tail")]
    pub tail_fraction: f64,
    pub delta_radii: Option<Vec<u32>>,
    pub ends_radius: Option<u32>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QiFitParams {
    pub map: String,
    pub l_max: f64,
    pub c_max: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum EmbedParams {
    DyadicPower {
        n: usize,
        function: String,
        p: f64,
        q: f64,
        #[serde(default)]
        s: f64,
        options: Option<PowerEmbeddingOptions>,
    },
    Tensor {
        function: String,
        eta: String,
        #[serde(default)]
        grid: GridParams,
        #[serde(default = "default_stride")]
        stride: usize,
        max_shift: Option<f64>,
        p: f64,
        q: f64,
        #[serde(default = "default_tol")]
        tol: f64,
    },
    Geometric {
        tests: Vec<String>,
        map: FunctionMap,
        source: SupportDecl,
        target: SupportDecl,
        l: f64,
        c: f64,
        #[serde(default)]
        grid: GridParams,
        #[serde(default = "support_tol")]
        tol: f64,
    },
}

fn support_tol() -> f64 {
    coarse_core::embeddings::DEFAULT_SUPPORT_TOL
}

/// Covering, window and local norm defining one side of the geometric check.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SupportDecl {
    pub covering: String,
    pub window: Window,
    #[serde(default = "default_order")]
    pub order: u32,
    #[serde(default = "default_eps")]
    pub eps: f64,
    #[serde(default = "two")]
    pub p: f64,
    #[serde(default = "default_mode")]
    pub mode: NormMode,
}

fn two() -> f64 {
    2.0
}

/// Maps between sampled functions on a common grid.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FunctionMap {
    Identity,
    /// `f -> f(. - cells * h)`, zero-filled at the edges.
    Translate {
        cells: Vec<i64>,
    },
}

/// Scalar overrides from the command line.
#[derive(Debug, Clone, Copy, Default, serde::Serialize)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub budget: Option<usize>,
    pub tol: Option<f64>,
}

/// A resolved function: either a sampler or already-sampled data.
pub enum Function {
    Preset(Preset),
    Data(SampledFunction),
}

impl Function {
    pub fn dim(&self) -> usize {
        match self {
            Function::Preset(p) => p.dim(),
            Function::Data(d) => d.dim(),
        }
    }
}

/// Parsed config plus the raw bytes of every file it references.
pub struct Loaded {
    pub config: RunConfig,
    pub base_dir: PathBuf,
    pub digest_inputs: Vec<(String, Vec<u8>)>,
}

pub fn load(path: &Path) -> Result<Loaded, CliError> {
    let bytes = std::fs::read(path)
        .map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
    let config: RunConfig = serde_json::from_slice(&bytes)
        .map_err(|e| CliError::config(format!("{}: {e}", path.display())))?;
    let base_dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
    let mut digest_inputs = vec![("config".to_string(), bytes)];
    let mut files: Vec<&PathBuf> = config
        .functions
        .values()
        .filter_map(|f| match f {
            FunctionSource::Csv { csv } => Some(csv),
            FunctionSource::Preset(_) => None,
        })
        .chain(config.maps.values().filter_map(|m| m.csv.as_ref()))
        .collect();
    files.sort();
    files.dedup();
    for f in files {
        let full = base_dir.join(f);
        let data = std::fs::read(&full)
            .map_err(|e| CliError::config(format!("cannot read {}: {e}", full.display())))?;
        digest_inputs.push((f.display().to_string(), data));
    }
    Ok(Loaded {
        config,
        base_dir,
        digest_inputs,
    })
}

impl Loaded {
    pub fn group(&self, name: &str) -> Result<&GroupSpec, CliError> {
        self.config
            .groups
            .get(name)
            .ok_or_else(|| CliError::config(format!("unknown group {name:?}")))
    }

    pub fn covering(&self, name: &str) -> Result<&CoveringSpec, CliError> {
        self.config
            .coverings
            .get(name)
            .ok_or_else(|| CliError::config(format!("unknown covering {name:?}")))
    }

    pub fn function(&self, name: &str) -> Result<Function, CliError> {
        match self.config.functions.get(name) {
            None => Err(CliError::config(format!("unknown function {name:?}"))),
            Some(FunctionSource::Preset(p)) => Ok(Function::Preset(p.clone())),
            Some(FunctionSource::Csv { csv }) => {
                let file = std::fs::File::open(self.base_dir.join(csv))
                    .map_err(|e| CliError::config(format!("{}: {e}", csv.display())))?;
                Ok(Function::Data(coarse_core::io::read_sampled_function(
                    file,
                )?))
            }
        }
    }

    /// Point pairs of a map, inline pairs first.
    pub fn map_pairs(
        &self,
        name: &str,
    ) -> Result<(&MapSource, coarse_core::io::PointPairs), CliError> {
        let m = self
            .config
            .maps
            .get(name)
            .ok_or_else(|| CliError::config(format!("unknown map {name:?}")))?;
        let mut pairs = m.pairs.clone();
        if let Some(csv) = &m.csv {
            let dim = m
                .source_dim
                .ok_or_else(|| CliError::config(format!("map {name:?}: csv needs source_dim")))?;
            let file = std::fs::File::open(self.base_dir.join(csv))
                .map_err(|e| CliError::config(format!("{}: {e}", csv.display())))?;
            pairs.extend(coarse_core::io::read_map_sample(file, dim)?);
        }
        Ok((m, pairs))
    }
}

pub fn positive(name: &str, v: f64) -> Result<(), CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(CliError::config(format!(
            "{name} must be positive and finite, got {v}"
        )))
    }
}

pub fn exponent(name: &str, v: f64) -> Result<(), CliError> {
    if v >= 1.0 && v.is_finite() {
        Ok(())
    } else {
        Err(CliError::config(format!(
            "{name} must be in [1, inf), got {v}"
        )))
    }
}
