//! Exact-arithmetic models of finitely generated groups, word metrics and
//! ball enumeration.
//!
//! Every model keeps its elements in a canonical form so that hashing and
//! equality agree with group equality. Generating sets are always closed
//! under inverses and contain the identity.

mod abelian;
mod ball;
mod engel;
mod free;
mod heisenberg;
mod sl2z;

use std::fmt::Debug;
use std::hash::Hash;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use abelian::FreeAbelian;
pub use ball::{
    ball, distance_matrix, growth_function, word_distance, Ball, WordLengths,
    DEFAULT_ELEMENT_BUDGET,
};
pub use engel::{EngelElem, EngelLattice};
pub use free::{FreeGroup, Word};
pub use heisenberg::DiscreteHeisenberg;
pub use sl2z::{Matrix2, Sl2z};

use crate::invariants::GrowthProfile;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GroupError {
    #[error("no factorization of length <= {cap}")]
    AboveCap { cap: u32 },
    #[error("element budget {budget} exceeded after radius {achieved_radius}")]
    ResourceLimit {
        budget: usize,
        achieved_radius: u32,
        partial: GrowthProfile,
    },
    #[error("cannot parse element {text:?}: {reason}")]
    Parse { text: String, reason: String },
    #[error("invalid group model: {0}")]
    InvalidModel(String),
}

/// A group with canonical element representatives.
pub trait Group: Send + Sync {
    type Elem: Clone + Eq + Hash + Ord + Debug + Send + Sync;

    fn name(&self) -> String;
    fn identity(&self) -> Self::Elem;
    fn multiply(&self, g: &Self::Elem, h: &Self::Elem) -> Self::Elem;
    fn inverse(&self, g: &Self::Elem) -> Self::Elem;
    /// Default generators before symmetrization (no identity, no inverses
    /// required).
    fn standard_generators(&self) -> Vec<Self::Elem>;
    /// Canonical text form, e.g. `(a;b;c)` for Heisenberg elements.
    fn format(&self, g: &Self::Elem) -> String;
    fn parse(&self, text: &str) -> Result<Self::Elem, GroupError>;
}

/// Finite generating set, closed under inverses and containing the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratingSet<E> {
    elements: Vec<E>,
}

impl<E: Clone + Eq + Hash + Ord> GeneratingSet<E> {
    /// Symmetrizes `elements` and adjoins the identity.
    pub fn new<G: Group<Elem = E>>(group: &G, elements: Vec<E>) -> Self {
        let mut all = Vec::with_capacity(2 * elements.len() + 1);
        all.push(group.identity());
        for g in elements {
            all.push(group.inverse(&g));
            all.push(g);
        }
        all.sort();
        all.dedup();
        Self { elements: all }
    }

    pub fn standard<G: Group<Elem = E>>(group: &G) -> Self {
        Self::new(group, group.standard_generators())
    }

    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_symmetric<G: Group<Elem = E>>(&self, group: &G) -> bool {
        self.elements
            .iter()
            .all(|g| self.elements.contains(&group.inverse(g)))
    }

    pub fn contains_identity<G: Group<Elem = E>>(&self, group: &G) -> bool {
        self.elements.contains(&group.identity())
    }
}

/// Declarative description of a group model, as it appears in run configs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupSpec {
    FreeAbelian { rank: usize },
    Heisenberg { n: usize },
    FreeGroup { rank: usize },
    Sl2z,
    Engel,
}

/// Concrete group model chosen at runtime.
#[derive(Debug, Clone)]
pub enum GroupModel {
    FreeAbelian(FreeAbelian),
    Heisenberg(DiscreteHeisenberg),
    Free(FreeGroup),
    Sl2z(Sl2z),
    Engel(EngelLattice),
}

impl GroupModel {
    pub fn from_spec(spec: &GroupSpec) -> Result<Self, GroupError> {
        Ok(match *spec {
            GroupSpec::FreeAbelian { rank } => Self::FreeAbelian(FreeAbelian::new(rank)?),
            GroupSpec::Heisenberg { n } => Self::Heisenberg(DiscreteHeisenberg::new(n)?),
            GroupSpec::FreeGroup { rank } => Self::Free(FreeGroup::new(rank)?),
            GroupSpec::Sl2z => Self::Sl2z(Sl2z),
            GroupSpec::Engel => Self::Engel(EngelLattice),
        })
    }
}

/// Runs `$body` with `$g` bound to the concrete model inside a
/// [`GroupModel`].
#[macro_export]
macro_rules! with_group {
    ($model:expr, |$g:ident| $body:expr) => {
        match $model {
            $crate::groups::GroupModel::FreeAbelian($g) => $body,
            $crate::groups::GroupModel::Heisenberg($g) => $body,
            $crate::groups::GroupModel::Free($g) => $body,
            $crate::groups::GroupModel::Sl2z($g) => $body,
            $crate::groups::GroupModel::Engel($g) => $body,
        }
    };
}

/// Splits `(a;b;c)` into its trimmed fields.
pub(crate) fn split_tuple(text: &str) -> Result<Vec<&str>, GroupError> {
    let t = text.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| GroupError::Parse {
            text: text.to_string(),
            reason: "expected parenthesised tuple".into(),
        })?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    Ok(inner.split(';').map(str::trim).collect())
}

pub(crate) fn parse_ints(text: &str, expected: usize) -> Result<Vec<i64>, GroupError> {
    let fields = split_tuple(text)?;
    if fields.len() != expected {
        return Err(GroupError::Parse {
            text: text.to_string(),
            reason: format!("expected {expected} coordinates, found {}", fields.len()),
        });
    }
    fields
        .iter()
        .map(|f| {
            f.parse::<i64>().map_err(|e| GroupError::Parse {
                text: text.to_string(),
                reason: e.to_string(),
            })
        })
        .collect()
}

pub(crate) fn format_ints(values: &[i64]) -> String {
    let parts: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    format!("({})", parts.join(";"))
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generating_sets_are_symmetric_with_identity() {
        let h = DiscreteHeisenberg::new(1).unwrap();
        let gens = GeneratingSet::standard(&h);
        assert_eq!(gens.len(), 5);
        assert!(gens.is_symmetric(&h));
        assert!(gens.contains_identity(&h));

        let s = Sl2z;
        let gens = GeneratingSet::standard(&s);
        assert!(gens.is_symmetric(&s));
        assert!(gens.contains_identity(&s));
    }

    #[test]
    fn models_from_specs() {
        let spec = GroupSpec::FreeAbelian { rank: 3 };
        assert!(matches!(
            GroupModel::from_spec(&spec).unwrap(),
            GroupModel::FreeAbelian(_)
        ));
        assert!(GroupModel::from_spec(&GroupSpec::FreeGroup { rank: 0 }).is_err());
        assert!(GroupModel::from_spec(&GroupSpec::Heisenberg { n: 0 }).is_err());
    }
}
