//! Discrete Heisenberg groups `H_{2n+1}(Z)`.
//!
//! Elements are `(a, b, c)` with `a, b in Z^n`, `c in Z` and product
//! `(a, b, c)(a', b', c') = (a + a', b + b', c + c' + a.b')`.

use smallvec::SmallVec;

use super::{format_ints, parse_ints, Group, GroupError};

pub type HeisElem = SmallVec<[i64; 3]>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiscreteHeisenberg {
    n: usize,
}

impl DiscreteHeisenberg {
    pub fn new(n: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::InvalidModel(
                "Heisenberg n must be positive".into(),
            ));
        }
        Ok(Self { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Builds the element `(a, b, c)`.
    pub fn element(&self, a: &[i64], b: &[i64], c: i64) -> HeisElem {
        assert_eq!(a.len(), self.n);
        assert_eq!(b.len(), self.n);
        let mut e: HeisElem = a.iter().chain(b).copied().collect();
        e.push(c);
        e
    }
}

impl Group for DiscreteHeisenberg {
    type Elem = HeisElem;

    fn name(&self) -> String {
        format!("H_{}(Z)", 2 * self.n + 1)
    }

    fn identity(&self) -> HeisElem {
        SmallVec::from_elem(0, 2 * self.n + 1)
    }

    fn multiply(&self, g: &HeisElem, h: &HeisElem) -> HeisElem {
        let n = self.n;
        let mut out: HeisElem = g.iter().zip(h).map(|(x, y)| x + y).collect();
        let dot: i64 = (0..n).map(|i| g[i] * h[n + i]).sum();
        out[2 * n] += dot;
        out
    }

    fn inverse(&self, g: &HeisElem) -> HeisElem {
        let n = self.n;
        let dot: i64 = (0..n).map(|i| g[i] * g[n + i]).sum();
        let mut out: HeisElem = g.iter().map(|x| -x).collect();
        out[2 * n] = -g[2 * n] + dot;
        out
    }

    fn standard_generators(&self) -> Vec<HeisElem> {
        (0..2 * self.n)
            .map(|i| {
                let mut e = self.identity();
                e[i] = 1;
                e
            })
            .collect()
    }

    fn format(&self, g: &HeisElem) -> String {
        format_ints(g)
    }

    fn parse(&self, text: &str) -> Result<HeisElem, GroupError> {
        Ok(parse_ints(text, 2 * self.n + 1)?.into_iter().collect())
    }
}
