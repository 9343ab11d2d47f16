//! Space-side Besov-type norms: dyadic partition, `L^p` pieces and the
//! weight `2^{m s}`.

use super::bapu::DyadicBapu;
use super::grid::{Grid, SampledFunction};
use super::norms::{decomposition_norm, decomposition_norm_refined, GlobalNorm, NormResult};
use super::presets::Sampler;
use super::{NormError, NormMode};

pub fn besov_norm(
    f: &SampledFunction,
    bapu: &DyadicBapu,
    s: f64,
    p: f64,
    q: f64,
) -> Result<NormResult, NormError> {
    decomposition_norm(f, bapu, p, NormMode::Lp, &GlobalNorm::dyadic(q, s))
}

#[allow(clippy::too_many_arguments)]
pub fn besov_norm_refined<S: Sampler + ?Sized>(
    f: &S,
    grid: &Grid,
    bapu: &DyadicBapu,
    s: f64,
    p: f64,
    q: f64,
    tol: f64,
) -> Result<NormResult, NormError> {
    decomposition_norm_refined(
        f,
        grid,
        bapu,
        p,
        NormMode::Lp,
        &GlobalNorm::dyadic(q, s),
        tol,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::bapu::{Bapu, Order};
    use crate::decomposition::presets::Preset;

    fn plateau() -> Preset {
        // supported in [8.5, 11.5], where phi_3 = 1 for eps = 1/4
        Preset::Plateau {
            lo: vec![9.0],
            hi: vec![11.0],
            ramp: 0.5,
        }
    }

    #[test]
    fn plateau_in_one_annulus() {
        let bapu = DyadicBapu::new(1, 1, 0.25, Order::Two).unwrap();
        let grid = Grid::symmetric(1, 32.0, 1.0 / 64.0).unwrap();
        let f = plateau().sample(&grid);
        let r = besov_norm(&f, &bapu, 0.0, 1.0, 1.0).unwrap();
        let l1 = f.lp_norm(1.0);
        assert!((r.global - l1).abs() < 1e-12 * l1);
        let nonzero: Vec<_> = r.local_norms.iter().filter(|l| l.value > 0.0).collect();
        assert!(nonzero.iter().all(|l| l.index == "3"));
    }

    #[test]
    fn weight_ratio_is_bounded_by_the_top_level() {
        let bapu = DyadicBapu::new(1, 1, 0.25, Order::Two).unwrap();
        let grid = Grid::symmetric(1, 256.0, 1.0 / 16.0).unwrap();
        let f = SampledFunction::real(grid, |x| {
            (-(x[0] / 40.0).powi(2)).exp() * (x[0].abs() < 250.0) as u8 as f64
        });
        let top = bapu
            .indices_meeting(&[-256.0], &[256.0])
            .into_iter()
            .max()
            .unwrap();
        let (s, s2) = (0.5, 1.25);
        let a = besov_norm(&f, &bapu, s, 2.0, 2.0).unwrap().global;
        let b = besov_norm(&f, &bapu, s2, 2.0, 2.0).unwrap().global;
        assert!(b >= a);
        assert!(b / a <= 2f64.powf(top as f64 * (s2 - s)));
    }

    #[test]
    fn zero_has_zero_norm() {
        let bapu = DyadicBapu::new(2, 1, 0.25, Order::One).unwrap();
        let grid = Grid::symmetric(2, 4.0, 0.25).unwrap();
        let r = besov_norm(&SampledFunction::zeros(grid), &bapu, 1.0, 1.0, 2.0).unwrap();
        assert_eq!(r.global, 0.0);
    }
}
