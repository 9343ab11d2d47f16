//! Left translates `P_{n,m,l} = (n,m,l) * [0,1]^3` of the unit cube in the
//! continuous Heisenberg group.
//!
//! The group law is `(a,b,c)(x,y,z) = (a+x, b+y, c+z+a*y)`, so the covering
//! is invariant under left translation by the integer lattice.

use num_rational::Ratio;

use super::{
    cartesian, lattice_box, unit_cells, unsupported, CoverError, Covering, LatticeIndex, Rational,
    RationalPoint, Window,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct HeisenbergCubes;

fn idx(i: &LatticeIndex) -> (i64, i64, i64) {
    (i.0[0], i.0[1], i.0[2])
}

impl HeisenbergCubes {
    /// Local coordinates of `x` relative to the cube `P_i`; `x` lies in
    /// `P_i` iff all three are in `[0, 1]`.
    fn local(i: &LatticeIndex, x: &RationalPoint) -> [Rational; 3] {
        let (n, m, l) = idx(i);
        let dy = x[1] - m;
        [x[0] - n, dy, x[2] - l - dy * n]
    }

    /// Range of admissible `l' - l` for neighbours with first coordinates
    /// `(n', m')`, or `None` when the projections are disjoint.
    fn l_offsets(n: i64, m: i64, n2: i64, m2: i64) -> Option<(i64, i64)> {
        if (n - n2).abs() > 1 || (m - m2).abs() > 1 {
            return None;
        }
        let y0 = m.max(m2);
        let y1 = m.min(m2) + 1;
        let a = |y: i64| n * (y - m) - n2 * (y - m2);
        let (a0, a1) = (a(y0), a(y1));
        Some((a0.min(a1) - 1, a0.max(a1) + 1))
    }

    /// Left action of a lattice element on points.
    pub fn act(g: &LatticeIndex, x: &RationalPoint) -> RationalPoint {
        let (a, b, c) = idx(g);
        smallvec::smallvec![x[0] + a, x[1] + b, x[2] + c + x[1] * a]
    }

    /// Left action of a lattice element on indices.
    pub fn act_index(g: &LatticeIndex, i: &LatticeIndex) -> LatticeIndex {
        let (a, b, c) = idx(g);
        let (n, m, l) = idx(i);
        LatticeIndex::new(&[a + n, b + m, c + l + a * m])
    }
}

impl Covering for HeisenbergCubes {
    type Index = LatticeIndex;
    type Point = RationalPoint;

    fn describe(&self) -> String {
        "unit-cube translates in the Heisenberg group".into()
    }

    fn window_indices(&self, window: &Window) -> Result<Vec<LatticeIndex>, CoverError> {
        match *window {
            Window::Box { radius } if radius >= 0 => Ok(lattice_box(3, radius)
                .into_iter()
                .map(LatticeIndex)
                .collect()),
            _ => Err(unsupported(&self.describe(), window)),
        }
    }

    fn neighbours(&self, i: &LatticeIndex) -> Vec<LatticeIndex> {
        let (n, m, l) = idx(i);
        let mut out = Vec::new();
        for n2 in n - 1..=n + 1 {
            for m2 in m - 1..=m + 1 {
                if let Some((lo, hi)) = Self::l_offsets(n, m, n2, m2) {
                    for dl in lo..=hi {
                        out.push(LatticeIndex::new(&[n2, m2, l + dl]));
                    }
                }
            }
        }
        out
    }

    fn intersects(&self, a: &LatticeIndex, b: &LatticeIndex) -> bool {
        let (n, m, l) = idx(a);
        let (n2, m2, l2) = idx(b);
        Self::l_offsets(n, m, n2, m2).is_some_and(|(lo, hi)| lo <= l2 - l && l2 - l <= hi)
    }

    fn contains(&self, i: &LatticeIndex, x: &RationalPoint) -> bool {
        let zero = Ratio::from_integer(0);
        let one = Ratio::from_integer(1);
        Self::local(i, x).iter().all(|&t| zero <= t && t <= one)
    }

    fn containing(&self, x: &RationalPoint) -> Vec<LatticeIndex> {
        let ns = unit_cells(x[0]);
        let ms = unit_cells(x[1]);
        let mut out = Vec::new();
        for pair in cartesian(&[ns, ms]) {
            let (n, m) = (pair[0], pair[1]);
            for l in unit_cells(x[2] - (x[1] - m) * n) {
                out.push(LatticeIndex::new(&[n, m, l]));
            }
        }
        out.sort();
        out
    }

    fn representative_points(&self, i: &LatticeIndex) -> Vec<RationalPoint> {
        let half = Ratio::new(1, 2);
        let centre: RationalPoint = smallvec::smallvec![half, half, half];
        let corner: RationalPoint = smallvec::smallvec![Ratio::from_integer(0); 3];
        vec![Self::act(i, &centre), Self::act(i, &corner)]
    }

    fn centrality(&self, i: &LatticeIndex, x: &RationalPoint) -> f64 {
        Self::local(i, x)
            .iter()
            .map(|t| (*t.numer() as f64 / *t.denom() as f64 - 0.5).abs())
            .fold(0.0, f64::max)
    }
}
