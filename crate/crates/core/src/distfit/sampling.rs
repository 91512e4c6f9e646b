//! Seeded inverse-transform sampling.
//!
//! The uniform stream is xoshiro256++ seeded through SplitMix64
//! (`SeedableRng::seed_from_u64`). Each 64-bit output `x` becomes
//! `u = ((x >> 12) + 0.5) / 2^52`, which lies strictly inside (0, 1), so both
//! quantile functions are always defined. Both families draw one uniform per
//! variate, so the same seed gives bit-identical output on every platform.

use rand_core::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use serde::{Deserialize, Serialize};

use super::{laplace_quantile_unchecked, normal_quantile, LaplaceParams, NormalParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RngSeed(pub u64);

/// A source of uniforms on the open interval (0, 1).
pub trait UniformSource {
    fn next_open01(&mut self) -> f64;
}

#[derive(Debug, Clone)]
pub struct SeededUniform {
    rng: Xoshiro256PlusPlus,
}

impl SeededUniform {
    pub fn new(seed: RngSeed) -> Self {
        SeededUniform { rng: Xoshiro256PlusPlus::seed_from_u64(seed.0) }
    }
}

impl UniformSource for SeededUniform {
    fn next_open01(&mut self) -> f64 {
        const SCALE: f64 = 1.0 / (1u64 << 52) as f64;
        ((self.rng.next_u64() >> 12) as f64 + 0.5) * SCALE
    }
}

pub fn sample_laplace(n: usize, p: &LaplaceParams, seed: RngSeed) -> Vec<f64> {
    sample_laplace_from(n, p, &mut SeededUniform::new(seed))
}

pub fn sample_laplace_from<U: UniformSource + ?Sized>(n: usize, p: &LaplaceParams, uniforms: &mut U) -> Vec<f64> {
    (0..n).map(|_| laplace_quantile_unchecked(uniforms.next_open01(), p)).collect()
}

pub fn sample_normal(n: usize, p: &NormalParams, seed: RngSeed) -> Vec<f64> {
    sample_normal_from(n, p, &mut SeededUniform::new(seed))
}

pub fn sample_normal_from<U: UniformSource + ?Sized>(n: usize, p: &NormalParams, uniforms: &mut U) -> Vec<f64> {
    (0..n)
        .map(|_| {
            let z = normal_quantile(uniforms.next_open01()).expect("uniform lies in (0, 1)");
            p.mean() + p.sigma() * z
        })
        .collect()
}
