//! The covering of a finitely generated group by translates `g B(r)` of a
//! word-metric ball.

use std::fmt;

use super::{unsupported, CoverError, Covering, Window};
use crate::groups::{ball, GeneratingSet, Group, WordLengths, DEFAULT_ELEMENT_BUDGET};

/// Group element paired with its canonical text, used as a covering index.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Labeled<E> {
    pub elem: E,
    pub label: String,
}

impl<E> fmt::Display for Labeled<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

impl<E: fmt::Debug> fmt::Debug for Labeled<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

pub struct GroupTranslates<G: Group> {
    group: G,
    gens: GeneratingSet<G::Elem>,
    radius: u32,
    small: Vec<G::Elem>,
    large: Vec<G::Elem>,
    lengths: WordLengths<G::Elem>,
}

impl<G: Group> GroupTranslates<G> {
    pub fn new(group: G, gens: GeneratingSet<G::Elem>, radius: u32) -> Result<Self, CoverError> {
        let b = ball(&group, &gens, 2 * radius, DEFAULT_ELEMENT_BUDGET)?;
        let small = b
            .elements()
            .iter()
            .filter(|g| b.lengths().get(g).is_some_and(|l| l <= radius))
            .cloned()
            .collect();
        let large = b.elements().to_vec();
        Ok(Self {
            group,
            gens,
            radius,
            small,
            large,
            lengths: b.into_lengths(),
        })
    }

    pub fn group(&self) -> &G {
        &self.group
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn label(&self, g: G::Elem) -> Labeled<G::Elem> {
        let label = self.group.format(&g);
        Labeled { elem: g, label }
    }

    fn offset(&self, g: &G::Elem, h: &G::Elem) -> G::Elem {
        self.group.multiply(&self.group.inverse(g), h)
    }
}

impl<G: Group> Covering for GroupTranslates<G> {
    type Index = Labeled<G::Elem>;
    type Point = G::Elem;

    fn describe(&self) -> String {
        format!("translates of B({}) in {}", self.radius, self.group.name())
    }

    fn window_indices(&self, window: &Window) -> Result<Vec<Self::Index>, CoverError> {
        match *window {
            Window::Ball { radius } => {
                let b = ball(&self.group, &self.gens, radius, DEFAULT_ELEMENT_BUDGET)?;
                Ok(b.elements()
                    .iter()
                    .cloned()
                    .map(|g| self.label(g))
                    .collect())
            }
            _ => Err(unsupported(&self.describe(), window)),
        }
    }

    fn neighbours(&self, i: &Self::Index) -> Vec<Self::Index> {
        self.large
            .iter()
            .map(|b| self.label(self.group.multiply(&i.elem, b)))
            .collect()
    }

    fn intersects(&self, a: &Self::Index, b: &Self::Index) -> bool {
        self.lengths.get(&self.offset(&a.elem, &b.elem)).is_some()
    }

    fn contains(&self, i: &Self::Index, x: &G::Elem) -> bool {
        self.lengths
            .get(&self.offset(&i.elem, x))
            .is_some_and(|l| l <= self.radius)
    }

    fn containing(&self, x: &G::Elem) -> Vec<Self::Index> {
        self.small
            .iter()
            .map(|b| self.label(self.group.multiply(x, b)))
            .collect()
    }

    fn representative_points(&self, i: &Self::Index) -> Vec<G::Elem> {
        vec![i.elem.clone()]
    }

    fn centrality(&self, i: &Self::Index, x: &G::Elem) -> f64 {
        self.lengths
            .get(&self.offset(&i.elem, x))
            .map_or(f64::INFINITY, f64::from)
    }
}
