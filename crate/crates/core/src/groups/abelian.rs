//! Free abelian groups `Z^k` with the standard basis.

use smallvec::SmallVec;

use super::{format_ints, parse_ints, Group, GroupError};

pub type IntVec = SmallVec<[i64; 4]>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FreeAbelian {
    rank: usize,
}

impl FreeAbelian {
    pub fn new(rank: usize) -> Result<Self, GroupError> {
        if rank == 0 {
            return Err(GroupError::InvalidModel("rank must be positive".into()));
        }
        Ok(Self { rank })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

impl Group for FreeAbelian {
    type Elem = IntVec;

    fn name(&self) -> String {
        format!("Z^{}", self.rank)
    }

    fn identity(&self) -> IntVec {
        SmallVec::from_elem(0, self.rank)
    }

    fn multiply(&self, g: &IntVec, h: &IntVec) -> IntVec {
        g.iter().zip(h).map(|(a, b)| a + b).collect()
    }

    fn inverse(&self, g: &IntVec) -> IntVec {
        g.iter().map(|a| -a).collect()
    }

    fn standard_generators(&self) -> Vec<IntVec> {
        (0..self.rank)
            .map(|i| {
                let mut e = self.identity();
                e[i] = 1;
                e
            })
            .collect()
    }

    fn format(&self, g: &IntVec) -> String {
        format_ints(g)
    }

    fn parse(&self, text: &str) -> Result<IntVec, GroupError> {
        Ok(parse_ints(text, self.rank)?.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::testing::check_axioms;

    #[test]
    fn axioms() {
        check_axioms(&FreeAbelian::new(3).unwrap(), 200, 12);
    }

    #[test]
    fn text_form() {
        let z = FreeAbelian::new(2).unwrap();
        let g = z.parse("(3; -1)").unwrap();
        assert_eq!(z.format(&g), "(3;-1)");
        assert!(z.parse("(1;2;3)").is_err());
    }
}
