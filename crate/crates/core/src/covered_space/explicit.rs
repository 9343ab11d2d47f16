//! Finite coverings given as explicit lists of subsets of a ground set.

use std::collections::BTreeSet;

use super::{unsupported, CoverError, Covering, Window};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitFinite {
    ground: BTreeSet<u32>,
    elements: Vec<BTreeSet<u32>>,
}

impl ExplicitFinite {
    /// Validates that every element is non-empty, lies in the ground set and
    /// that the elements cover it.
    pub fn new(ground: Vec<u32>, elements: Vec<Vec<u32>>) -> Result<Self, CoverError> {
        let ground: BTreeSet<u32> = ground.into_iter().collect();
        let elements: Vec<BTreeSet<u32>> = elements
            .into_iter()
            .map(|e| e.into_iter().collect())
            .collect();
        let mut union = BTreeSet::new();
        for (k, e) in elements.iter().enumerate() {
            if e.is_empty() {
                return Err(CoverError::InvalidSpec(format!("element {k} is empty")));
            }
            if !e.is_subset(&ground) {
                return Err(CoverError::InvalidSpec(format!(
                    "element {k} is not contained in the ground set"
                )));
            }
            union.extend(e.iter().copied());
        }
        if union != ground {
            return Err(CoverError::InvalidSpec(
                "elements do not cover the ground set".into(),
            ));
        }
        Ok(Self { ground, elements })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

impl Covering for ExplicitFinite {
    type Index = usize;
    type Point = u32;

    fn describe(&self) -> String {
        format!(
            "explicit covering of {} points by {} sets",
            self.ground.len(),
            self.elements.len()
        )
    }

    fn window_indices(&self, window: &Window) -> Result<Vec<usize>, CoverError> {
        match window {
            Window::Full => Ok((0..self.elements.len()).collect()),
            _ => Err(unsupported(&self.describe(), window)),
        }
    }

    fn neighbours(&self, i: &usize) -> Vec<usize> {
        (0..self.elements.len())
            .filter(|j| self.intersects(i, j))
            .collect()
    }

    fn intersects(&self, a: &usize, b: &usize) -> bool {
        !self.elements[*a].is_disjoint(&self.elements[*b])
    }

    fn contains(&self, i: &usize, x: &u32) -> bool {
        self.elements[*i].contains(x)
    }

    fn containing(&self, x: &u32) -> Vec<usize> {
        (0..self.elements.len())
            .filter(|i| self.contains(i, x))
            .collect()
    }

    fn representative_points(&self, i: &usize) -> Vec<u32> {
        self.elements[*i].iter().copied().collect()
    }

    fn centrality(&self, _i: &usize, _x: &u32) -> f64 {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covered_space::{build_nerve, chain_distance, is_concatenation};

    #[test]
    fn path_covering() {
        let c = ExplicitFinite::new(
            (0..6).collect(),
            vec![vec![0, 1], vec![1, 2, 3], vec![3, 4], vec![4, 5]],
        )
        .unwrap();
        let nerve = build_nerve(&c, &Window::Full).unwrap();
        assert!(is_concatenation(&nerve));
        assert_eq!(chain_distance(&c, &nerve, &0, &5).unwrap(), 4);
        assert_eq!(chain_distance(&c, &nerve, &1, &3).unwrap(), 1);
        assert_eq!(chain_distance(&c, &nerve, &2, &2).unwrap(), 0);
    }

    #[test]
    fn rejects_non_covers() {
        assert!(ExplicitFinite::new(vec![0, 1, 2], vec![vec![0], vec![1]]).is_err());
        assert!(ExplicitFinite::new(vec![0, 1], vec![vec![0, 1], vec![]]).is_err());
    }

    #[test]
    fn disconnected_cover() {
        let c = ExplicitFinite::new(vec![0, 1], vec![vec![0], vec![1]]).unwrap();
        let nerve = build_nerve(&c, &Window::Full).unwrap();
        assert!(!is_concatenation(&nerve));
        assert_eq!(
            chain_distance(&c, &nerve, &0, &1),
            Err(CoverError::Disconnected)
        );
    }
}
