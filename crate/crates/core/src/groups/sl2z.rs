//! `SL_2(Z)` with generators `S = [[0,-1],[1,0]]` and `T = [[1,1],[0,1]]`.

use super::{split_tuple, Group, GroupError};

/// Row-major `[a, b, c, d]` for `[[a, b], [c, d]]`.
pub type Matrix2 = [i64; 4];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Sl2z;

impl Group for Sl2z {
    type Elem = Matrix2;

    fn name(&self) -> String {
        "SL_2(Z)".into()
    }

    fn identity(&self) -> Matrix2 {
        [1, 0, 0, 1]
    }

    fn multiply(&self, g: &Matrix2, h: &Matrix2) -> Matrix2 {
        [
            g[0] * h[0] + g[1] * h[2],
            g[0] * h[1] + g[1] * h[3],
            g[2] * h[0] + g[3] * h[2],
            g[2] * h[1] + g[3] * h[3],
        ]
    }

    fn inverse(&self, g: &Matrix2) -> Matrix2 {
        [g[3], -g[1], -g[2], g[0]]
    }

    fn standard_generators(&self) -> Vec<Matrix2> {
        vec![[0, -1, 1, 0], [1, 1, 0, 1]]
    }

    /// `[[a;b];[c;d]]`.
    fn format(&self, g: &Matrix2) -> String {
        format!("[[{};{}];[{};{}]]", g[0], g[1], g[2], g[3])
    }

    fn parse(&self, text: &str) -> Result<Matrix2, GroupError> {
        let bad = |reason: &str| GroupError::Parse {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let cleaned: String = text
            .trim()
            .replace("[[", "(")
            .replace("]]", ")")
            .replace("];[", ";");
        let fields = split_tuple(&cleaned)?;
        if fields.len() != 4 {
            return Err(bad("expected four entries"));
        }
        let mut m = [0i64; 4];
        for (slot, f) in m.iter_mut().zip(&fields) {
            *slot = f.parse().map_err(|_| bad("non-integer entry"))?;
        }
        if m[0] * m[3] - m[1] * m[2] != 1 {
            return Err(bad("determinant is not 1"));
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::testing::check_axioms;

    #[test]
    fn axioms() {
        check_axioms(&Sl2z, 300, 12);
    }

    #[test]
    fn classical_relations() {
        let g = Sl2z;
        let s = [0, -1, 1, 0];
        let t = [1, 1, 0, 1];
        let s2 = g.multiply(&s, &s);
        assert_eq!(s2, [-1, 0, 0, -1]);
        let st = g.multiply(&s, &t);
        let st3 = g.multiply(&st, &g.multiply(&st, &st));
        assert_eq!(st3, s2);
        assert!(g.parse("[[2;0];[0;1]]").is_err());
    }
}
