//! Unit cubes `Q_n = n + [0,1]^k` indexed by `Z^k`.

use num_rational::Ratio;

use super::{
    cartesian, lattice_box, unit_cells, unsupported, CoverError, Covering, LatticeIndex,
    RationalPoint, Window,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UniformGrid {
    dim: usize,
}

impl UniformGrid {
    pub fn new(dim: usize) -> Result<Self, CoverError> {
        if dim == 0 {
            return Err(CoverError::InvalidSpec(
                "grid dimension must be positive".into(),
            ));
        }
        Ok(Self { dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

impl Covering for UniformGrid {
    type Index = LatticeIndex;
    type Point = RationalPoint;

    fn describe(&self) -> String {
        format!("uniform grid on R^{}", self.dim)
    }

    fn window_indices(&self, window: &Window) -> Result<Vec<LatticeIndex>, CoverError> {
        match *window {
            Window::Box { radius } if radius >= 0 => Ok(lattice_box(self.dim, radius)
                .into_iter()
                .map(LatticeIndex)
                .collect()),
            _ => Err(unsupported(&self.describe(), window)),
        }
    }

    fn neighbours(&self, i: &LatticeIndex) -> Vec<LatticeIndex> {
        lattice_box(self.dim, 1)
            .into_iter()
            .map(|e| LatticeIndex(i.0.iter().zip(&e).map(|(a, b)| a + b).collect()))
            .collect()
    }

    fn intersects(&self, a: &LatticeIndex, b: &LatticeIndex) -> bool {
        a.0.iter().zip(&b.0).all(|(x, y)| (x - y).abs() <= 1)
    }

    fn contains(&self, i: &LatticeIndex, x: &RationalPoint) -> bool {
        i.0.iter().zip(x).all(|(&n, &t)| {
            let n = Ratio::from_integer(n);
            n <= t && t <= n + 1
        })
    }

    fn containing(&self, x: &RationalPoint) -> Vec<LatticeIndex> {
        let axes: Vec<_> = x.iter().map(|&t| unit_cells(t)).collect();
        cartesian(&axes).into_iter().map(LatticeIndex).collect()
    }

    fn representative_points(&self, i: &LatticeIndex) -> Vec<RationalPoint> {
        let centre = i.0.iter().map(|&n| Ratio::new(2 * n + 1, 2)).collect();
        let corner = i.0.iter().map(|&n| Ratio::from_integer(n)).collect();
        vec![centre, corner]
    }

    fn centrality(&self, i: &LatticeIndex, x: &RationalPoint) -> f64 {
        i.0.iter()
            .zip(x)
            .map(|(&n, t)| {
                let off = *t - Ratio::new(2 * n + 1, 2);
                (*off.numer() as f64 / *off.denom() as f64).abs()
            })
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covered_space::{build_nerve, rational_point, star};

    #[test]
    fn stars_have_size_three_to_the_k() {
        for dim in 1..=3 {
            let g = UniformGrid::new(dim).unwrap();
            let nerve = build_nerve(&g, &Window::Box { radius: 3 }).unwrap();
            let origin = LatticeIndex::new(&vec![0; dim]);
            assert_eq!(
                star(&nerve, &origin, 1).unwrap().len(),
                3usize.pow(dim as u32)
            );
            assert_eq!(
                star(&nerve, &origin, 2).unwrap().len(),
                5usize.pow(dim as u32)
            );
            assert_eq!(nerve.admissibility_constant(), 3usize.pow(dim as u32));
        }
    }

    #[test]
    fn boundary_points_lie_in_several_cubes() {
        let g = UniformGrid::new(2).unwrap();
        let x = rational_point(&[1, 1], 2);
        assert_eq!(g.containing(&x).len(), 1);
        let corner = rational_point(&[2, 0], 1);
        let cells = g.containing(&corner);
        assert_eq!(cells.len(), 4);
        assert!(cells.iter().all(|c| g.contains(c, &corner)));
    }
}
