//! Dyadic annuli in `R^k`, optionally pulled back along `r -> r^p`.
//!
//! With `rho = |x|^p`: `D_0 = { rho <= 2 }` and
//! `D_m = { 2^{m-1} <= rho <= 2^{m+1} }` for `m >= 1`. Membership is decided
//! exactly by comparing `|x|^{2p}` with powers of four.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{unsupported, CoverError, Covering, Rational, RationalPoint, Window};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DyadicAnnuli {
    dim: usize,
    power: u32,
}

const MAX_LEVEL: u32 = 1000;

impl DyadicAnnuli {
    pub fn new(dim: usize, power: u32) -> Result<Self, CoverError> {
        if dim == 0 || power == 0 {
            return Err(CoverError::InvalidSpec(
                "dyadic annuli need positive dimension and power".into(),
            ));
        }
        Ok(Self { dim, power })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn power(&self) -> u32 {
        self.power
    }

    /// `|x|^{2p}` as an exact rational.
    fn level_value(&self, x: &RationalPoint) -> BigRational {
        let mut s = BigRational::zero();
        for t in x {
            let q = BigRational::new(BigInt::from(*t.numer()), BigInt::from(*t.denom()));
            s += &q * &q;
        }
        num_traits::pow(s, self.power as usize)
    }

    fn bounds(m: u32) -> (BigRational, BigRational) {
        let four = BigInt::from(4);
        let hi = BigRational::from_integer(num_traits::pow(four.clone(), m as usize + 1));
        let lo = if m == 0 {
            BigRational::zero()
        } else {
            BigRational::from_integer(num_traits::pow(four, m as usize - 1))
        };
        (lo, hi)
    }

    /// `log2 |x|^p` in floating point; `-inf` at the origin.
    fn log_rho(&self, x: &RationalPoint) -> f64 {
        let s: f64 = x
            .iter()
            .map(|t| {
                let v = *t.numer() as f64 / *t.denom() as f64;
                v * v
            })
            .sum();
        0.5 * self.power as f64 * s.log2()
    }
}

impl Covering for DyadicAnnuli {
    type Index = u32;
    type Point = RationalPoint;

    fn describe(&self) -> String {
        if self.power == 1 {
            format!("dyadic annuli on R^{}", self.dim)
        } else {
            format!(
                "dyadic annuli on R^{} pulled back by r^{}",
                self.dim, self.power
            )
        }
    }

    fn window_indices(&self, window: &Window) -> Result<Vec<u32>, CoverError> {
        match *window {
            Window::Range { lo, hi } if 0 <= lo && lo <= hi && hi <= MAX_LEVEL as i64 => {
                Ok((lo as u32..=hi as u32).collect())
            }
            _ => Err(unsupported(&self.describe(), window)),
        }
    }

    fn neighbours(&self, i: &u32) -> Vec<u32> {
        (i.saturating_sub(2)..=i + 2).collect()
    }

    fn intersects(&self, a: &u32, b: &u32) -> bool {
        let (alo, ahi) = Self::bounds(*a);
        let (blo, bhi) = Self::bounds(*b);
        alo.max(blo) <= ahi.min(bhi)
    }

    fn contains(&self, i: &u32, x: &RationalPoint) -> bool {
        let v = self.level_value(x);
        let (lo, hi) = Self::bounds(*i);
        lo <= v && v <= hi
    }

    fn containing(&self, x: &RationalPoint) -> Vec<u32> {
        let u = self.log_rho(x);
        let (from, to) = if u.is_finite() {
            (
                (u.floor() - 2.0).max(0.0) as u32,
                (u.ceil() + 2.0).max(0.0) as u32,
            )
        } else {
            (0, 0)
        };
        (from..=to).filter(|m| self.contains(m, x)).collect()
    }

    fn representative_points(&self, i: &u32) -> Vec<RationalPoint> {
        let rhos: Vec<f64> = if *i == 0 {
            vec![0.0, 1.0, 1.5]
        } else {
            let base = 2f64.powi(*i as i32);
            vec![0.75 * base, base, 1.5 * base]
        };
        rhos.into_iter()
            .map(|rho| {
                let r = rho.powf(1.0 / self.power as f64);
                let mut p: RationalPoint = smallvec::smallvec![Rational::zero(); self.dim];
                p[0] = Rational::new((r * 4096.0).round() as i64, 4096);
                p
            })
            .filter(|p| self.contains(i, p))
            .collect()
    }

    fn centrality(&self, i: &u32, x: &RationalPoint) -> f64 {
        let u = self.log_rho(x);
        if *i == 0 {
            u.max(0.0)
        } else {
            (u - *i as f64).abs()
        }
    }
}

impl DyadicAnnuli {
    /// The point `(t, 0, ..., 0)`.
    pub fn axis_point(&self, t: Rational) -> RationalPoint {
        let mut p: RationalPoint = smallvec::smallvec![Rational::zero(); self.dim];
        p[0] = t;
        p
    }

    /// The point at `rho = 2^a` on the first axis, for `a` divisible by the
    /// power.
    pub fn dyadic_point(&self, a: u32) -> RationalPoint {
        assert_eq!(a % self.power, 0);
        let r = 1i64 << (a / self.power);
        self.axis_point(Rational::from_integer(r))
    }
}
