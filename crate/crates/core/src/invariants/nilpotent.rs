//! Growth orders of nilpotent groups from lower central series data and of
//! stratified Lie groups from their growth vectors.

use serde::{Deserialize, Serialize};

use super::InvariantError;

/// Ranks of the successive quotients `C_{k-1} / C_k` of the lower central
/// series, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerCentralData {
    quotient_ranks: Vec<u32>,
}

impl LowerCentralData {
    pub fn new(mut ranks: Vec<u32>) -> Self {
        while ranks.last() == Some(&0) {
            ranks.pop();
        }
        Self {
            quotient_ranks: ranks,
        }
    }

    pub fn ranks(&self) -> &[u32] {
        &self.quotient_ranks
    }

    pub fn free_abelian(k: u32) -> Self {
        Self::new(vec![k])
    }

    /// `H_{2n+1}(Z)`: ranks `(2n, 1)`.
    pub fn heisenberg(n: u32) -> Self {
        Self::new(vec![2 * n, 1])
    }

    /// The Engel lattice: ranks `(2, 1, 1)`.
    pub fn engel() -> Self {
        Self::new(vec![2, 1, 1])
    }

    /// Direct product: the lower central series of `G x H` is the product of
    /// the two series, so ranks add termwise.
    pub fn product(&self, other: &Self) -> Self {
        let n = self.quotient_ranks.len().max(other.quotient_ranks.len());
        let at = |v: &[u32], k: usize| v.get(k).copied().unwrap_or(0);
        Self::new(
            (0..n)
                .map(|k| at(&self.quotient_ranks, k) + at(&other.quotient_ranks, k))
                .collect(),
        )
    }
}

/// Dimensions `n_1, ..., n_s` of the strata `V_1, ..., V_s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthVector {
    strata_dims: Vec<u32>,
}

impl GrowthVector {
    pub fn new(strata_dims: Vec<u32>) -> Result<Self, InvariantError> {
        if strata_dims.is_empty() || strata_dims.contains(&0) {
            return Err(InvariantError::InvalidInput(
                "growth vector entries must be positive and non-empty".into(),
            ));
        }
        Ok(Self { strata_dims })
    }

    pub fn dims(&self) -> &[u32] {
        &self.strata_dims
    }
}

/// `sum_k k * rank(C_{k-1} / C_k)`.
pub fn bass_guivarch(lcs: &LowerCentralData) -> u64 {
    lcs.quotient_ranks
        .iter()
        .enumerate()
        .map(|(k, &r)| (k as u64 + 1) * r as u64)
        .sum()
}

/// `Q = sum_j j * dim V_j`.
pub fn homogeneous_dimension(gv: &GrowthVector) -> u64 {
    gv.strata_dims
        .iter()
        .enumerate()
        .map(|(j, &n)| (j as u64 + 1) * n as u64)
        .sum()
}
