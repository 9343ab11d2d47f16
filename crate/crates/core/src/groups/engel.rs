//! Lattice in the Engel group, in exponential coordinates.
//!
//! The Lie algebra has basis `X1..X4` with `[X1, X2] = X3`,
//! `[X1, X3] = X4`, all other brackets zero. The group law is the
//! Baker-Campbell-Hausdorff product, which terminates at order three
//! because the algebra is 3-step nilpotent. Coordinates are exact
//! rationals; the lattice generated by `exp(X1)` and `exp(X2)` has
//! denominators dividing 12.

use num_rational::Ratio;

use super::{split_tuple, Group, GroupError};

pub type EngelElem = [Ratio<i64>; 4];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EngelLattice;

fn bracket(a: &EngelElem, b: &EngelElem) -> EngelElem {
    let z = Ratio::from_integer(0);
    [z, z, a[0] * b[1] - a[1] * b[0], a[0] * b[2] - a[2] * b[0]]
}

fn add(a: &EngelElem, b: &EngelElem) -> EngelElem {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

fn scale(a: &EngelElem, s: Ratio<i64>) -> EngelElem {
    [a[0] * s, a[1] * s, a[2] * s, a[3] * s]
}

impl Group for EngelLattice {
    type Elem = EngelElem;

    fn name(&self) -> String {
        "Engel".into()
    }

    fn identity(&self) -> EngelElem {
        [Ratio::from_integer(0); 4]
    }

    /// `X + Y + [X,Y]/2 + [X,[X,Y]]/12 + [Y,[Y,X]]/12`.
    fn multiply(&self, x: &EngelElem, y: &EngelElem) -> EngelElem {
        let xy = bracket(x, y);
        let yx = scale(&xy, Ratio::from_integer(-1));
        let twelfth = Ratio::new(1, 12);
        let mut z = add(x, y);
        z = add(&z, &scale(&xy, Ratio::new(1, 2)));
        z = add(&z, &scale(&bracket(x, &xy), twelfth));
        add(&z, &scale(&bracket(y, &yx), twelfth))
    }

    fn inverse(&self, g: &EngelElem) -> EngelElem {
        scale(g, Ratio::from_integer(-1))
    }

    fn standard_generators(&self) -> Vec<EngelElem> {
        let (z, o) = (Ratio::from_integer(0), Ratio::from_integer(1));
        vec![[o, z, z, z], [z, o, z, z]]
    }

    fn format(&self, g: &EngelElem) -> String {
        let parts: Vec<String> = g.iter().map(|q| q.to_string()).collect();
        format!("({})", parts.join(";"))
    }

    fn parse(&self, text: &str) -> Result<EngelElem, GroupError> {
        let fields = split_tuple(text)?;
        if fields.len() != 4 {
            return Err(GroupError::Parse {
                text: text.to_string(),
                reason: "expected 4 coordinates".into(),
            });
        }
        let mut out = self.identity();
        for (slot, f) in out.iter_mut().zip(&fields) {
            *slot = f.parse().map_err(|_| GroupError::Parse {
                text: text.to_string(),
                reason: format!("bad rational {f:?}"),
            })?;
        }
        Ok(out)
    }
}
