//! Seeded sampling of small-height rational parameters, with rejection of
//! the non-generic hyperplanes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{ratq, Coeff, MPoly, RatFun, Rat};

/// Draws before a check gives up with an `exhausted` status.
pub const MAX_ATTEMPTS: usize = 16;

pub struct Sampler {
    rng: ChaCha8Rng,
    height: i64,
}

impl Sampler {
    pub fn new(seed: u64, height: i64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), height: height.max(1) }
    }

    /// `p/q` with `|p| ≤ h`, `1 ≤ q ≤ h`.
    pub fn rational(&mut self) -> Rat {
        let p = self.rng.random_range(-self.height..=self.height);
        let q = self.rng.random_range(1..=self.height);
        ratq(p, q)
    }

    pub fn rationals(&mut self, k: usize) -> Vec<Rat> {
        (0..k).map(|_| self.rational()).collect()
    }

    /// `ξ`: nonzero and pairwise distinct, or `None`.
    pub fn xi(&mut self, k: usize) -> Option<Vec<Rat>> {
        let xs = self.rationals(k);
        let ok = xs.iter().enumerate().all(|(p, x)| !num_traits::Zero::is_zero(x) && !xs[p + 1..].contains(x));
        ok.then_some(xs)
    }

    /// Weights whose pairwise differences are not integers, or `None`.
    pub fn lambda(&mut self, k: usize) -> Option<Vec<Rat>> {
        let xs = self.rationals(k);
        let ok = xs.iter().enumerate().all(|(p, x)| xs[p + 1..].iter().all(|y| !(x - y).is_integer()));
        ok.then_some(xs)
    }

    /// Integer coefficients in `[-h, h]`.
    pub fn int(&mut self) -> i64 {
        self.rng.random_range(-self.height..=self.height)
    }

    pub fn below(&mut self, n: u32) -> u32 {
        self.rng.random_range(0..n)
    }
}

/// Image of sampled rationals in `K`; `None` when a denominator vanishes
/// modulo the prime.
pub fn to_field<K: Coeff>(xs: &[Rat]) -> Option<Vec<K>> {
    xs.iter().map(K::from_rat).collect()
}

pub fn to_ratfun<K: Coeff>(xs: &[K]) -> Vec<RatFun<K>> {
    xs.iter().cloned().map(RatFun::constant).collect()
}

pub fn to_poly<K: Coeff>(xs: &[K]) -> Vec<MPoly<K>> {
    xs.iter().cloned().map(MPoly::constant).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible_and_bounded() {
        let mut a = Sampler::new(7, 10);
        let mut b = Sampler::new(7, 10);
        let xs = a.rationals(20);
        assert_eq!(xs, b.rationals(20));
        for x in &xs {
            assert!(x.numer().magnitude() <= &10u32.into());
            assert!(x.denom() <= &10.into());
        }
    }

    #[test]
    fn rejections() {
        let mut s = Sampler::new(1, 1);
        // height 1 forces repeats or zeros quickly
        let draws: Vec<_> = (0..50).map(|_| s.xi(3)).collect();
        assert!(draws.iter().any(|d| d.is_none()));
        for d in draws.into_iter().flatten() {
            assert!(d.iter().all(|x| !num_traits::Zero::is_zero(x)));
        }
        let mut s = Sampler::new(2, 1);
        assert!((0..20).all(|_| s.lambda(2).is_none()));
    }
}
