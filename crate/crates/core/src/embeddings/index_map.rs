//! Index maps induced by point maps between covered spaces.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::EmbeddingError;
use crate::covered_space::{Covering, Window};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum IndexMapVerdict {
    Bijection,
    NotBijection {
        /// Target indices in the window that no source index selects.
        missed: Vec<String>,
        /// Target indices selected by more than one source index.
        repeated: Vec<String>,
        /// Source indices whose selection leaves the target window.
        leaving: Vec<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexMapReport {
    /// `(j, i)` with `phi(P_j)` meeting `Q_i`.
    pub pairs: Vec<(String, String)>,
    pub verdict: IndexMapVerdict,
    pub source_window: String,
    pub target_window: String,
    /// How the target sequence norm is pulled back to source indices.
    pub pullback: String,
}

impl IndexMapReport {
    pub fn is_bijection(&self) -> bool {
        self.verdict == IndexMapVerdict::Bijection
    }
}

/// For each source index `j` in the window, maps the most central sample
/// point of `P_j` and selects the most central target index containing the
/// image. Every target index in its window must contain some sampled image.
pub fn induced_index_map<C1: Covering, C2: Covering>(
    source: &C1,
    source_window: &Window,
    target: &C2,
    target_window: &Window,
    map: impl Fn(&C1::Point) -> C2::Point,
) -> Result<IndexMapReport, EmbeddingError> {
    let sources = source.window_indices(source_window)?;
    let targets: BTreeSet<C2::Index> = target.window_indices(target_window)?.into_iter().collect();

    let mut hit: BTreeSet<C2::Index> = BTreeSet::new();
    let mut selected: Vec<(C1::Index, C2::Index)> = Vec::with_capacity(sources.len());
    for j in &sources {
        let mut points = source.representative_points(j);
        if points.is_empty() {
            return Err(EmbeddingError::InvalidInput(format!(
                "no sample points in {j}"
            )));
        }
        points.sort_by(|a, b| source.centrality(j, a).total_cmp(&source.centrality(j, b)));
        for x in &points {
            hit.extend(target.containing(&map(x)));
        }
        let centre = map(&points[0]);
        let i = target
            .containing(&centre)
            .into_iter()
            .min_by(|a, b| {
                target
                    .centrality(a, &centre)
                    .total_cmp(&target.centrality(b, &centre))
            })
            .ok_or_else(|| {
                EmbeddingError::InvalidInput(format!("image of the centre of {j} is not covered"))
            })?;
        selected.push((j.clone(), i));
    }

    let missing: Vec<String> = targets
        .iter()
        .filter(|i| !hit.contains(*i))
        .map(ToString::to_string)
        .collect();
    if !missing.is_empty() {
        return Err(EmbeddingError::NotSurjectiveOnWindow { missing });
    }

    let mut count: BTreeMap<&C2::Index, usize> = BTreeMap::new();
    let mut leaving = Vec::new();
    for (j, i) in &selected {
        if targets.contains(i) {
            *count.entry(i).or_default() += 1;
        } else {
            leaving.push(j.to_string());
        }
    }
    let missed: Vec<String> = targets
        .iter()
        .filter(|i| !count.contains_key(i))
        .map(ToString::to_string)
        .collect();
    let repeated: Vec<String> = count
        .iter()
        .filter(|(_, &n)| n > 1)
        .map(|(i, _)| i.to_string())
        .collect();
    let verdict = if missed.is_empty() && repeated.is_empty() && leaving.is_empty() {
        IndexMapVerdict::Bijection
    } else {
        IndexMapVerdict::NotBijection {
            missed,
            repeated,
            leaving,
        }
    };
    let pullback = match verdict {
        IndexMapVerdict::Bijection => {
            "(Y)_phi: the entry at source index j is weighted as target index phi(j)".into()
        }
        IndexMapVerdict::NotBijection { .. } => {
            "no pullback: the induced index map is not a bijection".into()
        }
    };
    Ok(IndexMapReport {
        pairs: selected
            .iter()
            .map(|(j, i)| (j.to_string(), i.to_string()))
            .collect(),
        verdict,
        source_window: source_window.to_string(),
        target_window: target_window.to_string(),
        pullback,
    })
}
