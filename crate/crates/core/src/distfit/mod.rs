//! Normal and Laplace primitives: parameters, fitting, densities, CDFs and
//! seeded sampling.
//!
//! The Laplace density is `exp(-|x - mu| / lambda) / (2 lambda)`. Its
//! maximum-likelihood fit is the sample median for `mu` and the mean absolute
//! deviation about that median for `lambda`. The Normal fit is maximum
//! likelihood as well: sample mean and population standard deviation.

mod quantile;
mod sampling;

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::moments;

pub use quantile::normal_quantile;
pub use sampling::{
    sample_laplace, sample_laplace_from, sample_normal, sample_normal_from, RngSeed, SeededUniform, UniformSource,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawLaplace")]
pub struct LaplaceParams {
    mu: f64,
    lambda: f64,
}

#[derive(Deserialize)]
struct RawLaplace {
    mu: f64,
    lambda: f64,
}

impl TryFrom<RawLaplace> for LaplaceParams {
    type Error = Error;

    fn try_from(raw: RawLaplace) -> Result<Self> {
        LaplaceParams::new(raw.mu, raw.lambda)
    }
}

impl LaplaceParams {
    pub fn new(mu: f64, lambda: f64) -> Result<Self> {
        if !mu.is_finite() {
            return Err(Error::Domain(format!("Laplace location must be finite, got {mu}")));
        }
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::Domain(format!("Laplace scale must be positive and finite, got {lambda}")));
        }
        Ok(LaplaceParams { mu, lambda })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawNormal")]
pub struct NormalParams {
    mean: f64,
    sigma: f64,
}

#[derive(Deserialize)]
struct RawNormal {
    mean: f64,
    sigma: f64,
}

impl TryFrom<RawNormal> for NormalParams {
    type Error = Error;

    fn try_from(raw: RawNormal) -> Result<Self> {
        NormalParams::new(raw.mean, raw.sigma)
    }
}

impl NormalParams {
    pub const STANDARD: NormalParams = NormalParams { mean: 0.0, sigma: 1.0 };

    pub fn new(mean: f64, sigma: f64) -> Result<Self> {
        if !mean.is_finite() {
            return Err(Error::Domain(format!("Normal mean must be finite, got {mean}")));
        }
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(Error::Domain(format!("Normal sigma must be positive and finite, got {sigma}")));
        }
        Ok(NormalParams { mean, sigma })
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }
}

/// Median without mutating the input. Even-length samples average the two
/// middle order statistics.
pub fn median(sample: &[f64]) -> Result<f64> {
    if sample.is_empty() {
        return Err(Error::insufficient(1, 0));
    }
    let mut buf = sample.to_vec();
    let mid = buf.len() / 2;
    let (lower, upper, _) = buf.select_nth_unstable_by(mid, f64::total_cmp);
    let upper = *upper;
    if sample.len() % 2 == 1 {
        return Ok(upper);
    }
    let below = lower.iter().copied().max_by(f64::total_cmp).expect("even n >= 2");
    Ok(below + (upper - below) / 2.0)
}

pub fn fit_laplace(sample: &[f64]) -> Result<LaplaceParams> {
    if sample.len() < 2 {
        return Err(Error::insufficient(2, sample.len()));
    }
    let mu = median(sample)?;
    let lambda = sample.iter().map(|x| (x - mu).abs()).sum::<f64>() / sample.len() as f64;
    if lambda <= 0.0 {
        return Err(Error::Degenerate("all values identical; Laplace scale is zero".into()));
    }
    LaplaceParams::new(mu, lambda)
}

pub fn fit_normal(sample: &[f64]) -> Result<NormalParams> {
    if sample.len() < 2 {
        return Err(Error::insufficient(2, sample.len()));
    }
    let m = moments::MomentsReport::from_sample(sample)?;
    if m.m2 <= 0.0 {
        return Err(Error::Degenerate("all values identical; Normal sigma is zero".into()));
    }
    NormalParams::new(m.mean, m.m2.sqrt())
}

pub fn laplace_pdf(x: f64, p: &LaplaceParams) -> f64 {
    (-(x - p.mu).abs() / p.lambda).exp() / (2.0 * p.lambda)
}

pub fn laplace_ln_pdf(x: f64, p: &LaplaceParams) -> f64 {
    -(2.0 * p.lambda).ln() - (x - p.mu).abs() / p.lambda
}

pub fn laplace_cdf(x: f64, p: &LaplaceParams) -> f64 {
    let z = (x - p.mu) / p.lambda;
    if z < 0.0 {
        0.5 * z.exp()
    } else {
        1.0 - 0.5 * (-z).exp()
    }
}

pub fn laplace_quantile(q: f64, p: &LaplaceParams) -> Result<f64> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::Domain(format!("quantile level must lie in (0, 1), got {q}")));
    }
    Ok(laplace_quantile_unchecked(q, p))
}

// x = mu - lambda * sgn(u - 1/2) * ln(1 - 2|u - 1/2|)
pub(crate) fn laplace_quantile_unchecked(u: f64, p: &LaplaceParams) -> f64 {
    let d = u - 0.5;
    if d == 0.0 {
        return p.mu;
    }
    p.mu - p.lambda * d.signum() * (-2.0 * d.abs()).ln_1p()
}

pub fn normal_pdf(x: f64, p: &NormalParams) -> f64 {
    let z = (x - p.mean) / p.sigma;
    (-0.5 * z * z).exp() / (p.sigma * (2.0 * PI).sqrt())
}

pub fn normal_ln_pdf(x: f64, p: &NormalParams) -> f64 {
    let z = (x - p.mean) / p.sigma;
    -0.5 * z * z - p.sigma.ln() - 0.5 * (2.0 * PI).ln()
}

pub fn normal_cdf(x: f64, p: &NormalParams) -> f64 {
    standard_normal_cdf((x - p.mean) / p.sigma)
}

/// Φ(z), via the complementary error function so both tails keep relative accuracy.
pub fn standard_normal_cdf(z: f64) -> f64 {
    0.5 * libm::erfc(-z * FRAC_1_SQRT_2)
}

/// 1 − Φ(z) without cancellation.
pub fn standard_normal_sf(z: f64) -> f64 {
    0.5 * libm::erfc(z * FRAC_1_SQRT_2)
}
