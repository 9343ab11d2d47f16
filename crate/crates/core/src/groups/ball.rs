//! Breadth-first enumeration of word-metric balls.

use std::collections::HashMap;

use super::{GeneratingSet, Group, GroupError};
use crate::invariants::GrowthProfile;
use crate::metric::DistanceMatrix;

/// Default cap on the number of stored elements.
pub const DEFAULT_ELEMENT_BUDGET: usize = 5_000_000;

/// The ball `B(r)` in BFS order, with word lengths.
#[derive(Debug, Clone)]
pub struct Ball<E> {
    elements: Vec<E>,
    /// `sphere_starts[k]` is the offset of the first element of length `k`;
    /// one trailing sentinel.
    sphere_starts: Vec<usize>,
    lengths: WordLengths<E>,
}

impl<E: Clone + Eq + std::hash::Hash> Ball<E> {
    pub fn radius(&self) -> u32 {
        (self.sphere_starts.len() - 2) as u32
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    pub fn sphere(&self, k: u32) -> &[E] {
        let k = k as usize;
        &self.elements[self.sphere_starts[k]..self.sphere_starts[k + 1]]
    }

    /// Cumulative ball sizes `|B(0)|, ..., |B(r)|`.
    pub fn sizes(&self) -> Vec<u64> {
        self.sphere_starts[1..].iter().map(|&s| s as u64).collect()
    }

    pub fn lengths(&self) -> &WordLengths<E> {
        &self.lengths
    }

    pub fn into_lengths(self) -> WordLengths<E> {
        self.lengths
    }
}

/// Word lengths of every element of a ball.
#[derive(Debug, Clone)]
pub struct WordLengths<E> {
    radius: u32,
    map: HashMap<E, u32>,
}

impl<E: Eq + std::hash::Hash> WordLengths<E> {
    pub fn radius(&self) -> u32 {
        self.radius
    }

    /// `Some(|g|)` when `|g| <= radius`.
    pub fn get(&self, g: &E) -> Option<u32> {
        self.map.get(g).copied()
    }
}

/// Enumerates `B(radius)`, storing at most `budget` elements.
pub fn ball<G: Group>(
    group: &G,
    gens: &GeneratingSet<G::Elem>,
    radius: u32,
    budget: usize,
) -> Result<Ball<G::Elem>, GroupError> {
    let e = group.identity();
    let mut map = HashMap::new();
    map.insert(e.clone(), 0u32);
    let mut elements = vec![e];
    let mut starts = vec![0usize, 1usize];
    for k in 1..=radius {
        let frontier = starts[k as usize - 1]..starts[k as usize];
        for idx in frontier {
            for s in gens.elements() {
                let g = group.multiply(&elements[idx], s);
                if map.contains_key(&g) {
                    continue;
                }
                if elements.len() >= budget {
                    let sizes: Vec<u64> = starts[1..].iter().map(|&s| s as u64).collect();
                    return Err(GroupError::ResourceLimit {
                        budget,
                        achieved_radius: k - 1,
                        partial: GrowthProfile::new(
                            (0..k).collect(),
                            sizes,
                            format!("{} word metric (partial)", group.name()),
                        ),
                    });
                }
                map.insert(g.clone(), k);
                elements.push(g);
            }
        }
        starts.push(elements.len());
    }
    Ok(Ball {
        elements,
        sphere_starts: starts,
        lengths: WordLengths { radius, map },
    })
}

/// Growth function `r -> |B(r)|` for `r = 0..=r_max`.
pub fn growth_function<G: Group>(
    group: &G,
    gens: &GeneratingSet<G::Elem>,
    r_max: u32,
    budget: usize,
) -> Result<GrowthProfile, GroupError> {
    let b = ball(group, gens, r_max, budget)?;
    Ok(GrowthProfile::new(
        (0..=r_max).collect(),
        b.sizes(),
        format!("{} word metric", group.name()),
    ))
}

/// `|g^{-1} h|`, searching up to length `cap`.
pub fn word_distance<G: Group>(
    group: &G,
    gens: &GeneratingSet<G::Elem>,
    g: &G::Elem,
    h: &G::Elem,
    cap: u32,
    budget: usize,
) -> Result<u32, GroupError> {
    let target = group.multiply(&group.inverse(g), h);
    let e = group.identity();
    if target == e {
        return Ok(0);
    }
    let mut seen = std::collections::HashSet::new();
    seen.insert(e.clone());
    let mut frontier = vec![e];
    for k in 1..=cap {
        let mut next = Vec::new();
        for w in &frontier {
            for s in gens.elements() {
                let x = group.multiply(w, s);
                if x == target {
                    return Ok(k);
                }
                if seen.insert(x.clone()) {
                    next.push(x);
                }
            }
        }
        if seen.len() > budget {
            return Err(GroupError::ResourceLimit {
                budget,
                achieved_radius: k,
                partial: GrowthProfile::new(Vec::new(), Vec::new(), group.name()),
            });
        }
        frontier = next;
    }
    Err(GroupError::AboveCap { cap })
}

/// Pairwise word distances on `sample`; pairs farther apart than `cap`
/// get `f64::INFINITY`.
pub fn distance_matrix<G: Group>(
    group: &G,
    gens: &GeneratingSet<G::Elem>,
    sample: &[G::Elem],
    cap: u32,
    budget: usize,
) -> Result<DistanceMatrix, GroupError> {
    let lengths = ball(group, gens, cap, budget)?.into_lengths();
    let inverses: Vec<G::Elem> = sample.iter().map(|g| group.inverse(g)).collect();
    Ok(DistanceMatrix::from_fn(sample.len(), |i, j| {
        let d = group.multiply(&inverses[i], &sample[j]);
        lengths.get(&d).map_or(f64::INFINITY, f64::from)
    }))
}
