//! Shapiro-Wilk test for normality, using Royston's 1995 approximations
//! (algorithm AS R94) for both the weights and the p-value.
//!
//! Weights start from Blom scores `m_i = Φ⁻¹((i - 3/8) / (n + 1/4))`. The two
//! most extreme weights (one for `n <= 5`) receive polynomial corrections in
//! `1/√n`, and the remaining scores are rescaled so that `Σa² = 1`.
//!
//! The p-value normalises `ln(1 - W)`: for `n >= 12` it is treated as normal
//! with mean and log-sd polynomial in `ln n`; for `4 <= n <= 11` a further
//! `-ln(γ - ln(1 - W))` transform is applied first; `n = 3` has an exact law.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use serde::{Deserialize, Serialize};

use crate::distfit::{normal_quantile, standard_normal_sf};
use crate::error::{Error, Result};

/// Largest sample size the p-value approximation was calibrated for.
pub const MAX_VALIDATED_N: usize = 5000;

// Corrections to the extreme weights, ascending powers of 1/√n.
const LAST_WEIGHT: [f64; 6] = [0.0, 0.221157, -0.147981, -2.071190, 4.434685, -2.706056];
const PENULTIMATE_WEIGHT: [f64; 6] = [0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633];

// Small-sample regime (4..=11), polynomials in n.
const SMALL_GAMMA: [f64; 2] = [-2.273, 0.459];
const SMALL_MEAN: [f64; 4] = [0.5440, -0.39978, 0.025054, -6.714e-4];
const SMALL_LOG_SD: [f64; 4] = [1.3822, -0.77857, 0.062767, -0.0020322];

// Large-sample regime (n >= 12), polynomials in ln n.
const LARGE_MEAN: [f64; 4] = [-1.5861, -0.31082, -0.083751, 0.0038915];
const LARGE_LOG_SD: [f64; 3] = [-0.4803, -0.082676, 0.0030302];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SwResult {
    pub n: usize,
    pub w: f64,
    pub p_value: f64,
    /// Set when `n` exceeds the range the p-value approximation covers.
    pub large_n_warning: bool,
}

fn poly(coefs: &[f64], x: f64) -> f64 {
    coefs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// Full weight vector for a sample of size `n`, indexed by ascending order
/// statistic. Antisymmetric (`a_i = -a_{n+1-i}`), unit norm, with the first
/// weight positive.
pub fn sw_coefficients(n: usize) -> Result<Vec<f64>> {
    if n < 3 {
        return Err(Error::insufficient(3, n));
    }
    let half = n / 2;
    let mut lower = vec![0.0; half];
    if n == 3 {
        lower[0] = FRAC_1_SQRT_2;
    } else {
        let denom = n as f64 + 0.25;
        // Blom scores for the lower half are negative; store magnitudes.
        let scores: Vec<f64> = (0..half)
            .map(|i| -normal_quantile((i as f64 + 1.0 - 0.375) / denom).expect("plotting position in (0, 1)"))
            .collect();
        let sum_sq = 2.0 * scores.iter().map(|m| m * m).sum::<f64>();
        let norm = sum_sq.sqrt();
        let u = 1.0 / (n as f64).sqrt();

        let last = scores[0] / norm + poly(&LAST_WEIGHT, u);
        let (corrected, phi) = if n > 5 {
            let penultimate = scores[1] / norm + poly(&PENULTIMATE_WEIGHT, u);
            lower[1] = penultimate;
            let phi = (sum_sq - 2.0 * scores[0].powi(2) - 2.0 * scores[1].powi(2))
                / (1.0 - 2.0 * last.powi(2) - 2.0 * penultimate.powi(2));
            (2, phi)
        } else {
            (1, (sum_sq - 2.0 * scores[0].powi(2)) / (1.0 - 2.0 * last.powi(2)))
        };
        lower[0] = last;
        let scale = phi.sqrt();
        for (w, m) in lower.iter_mut().zip(&scores).skip(corrected) {
            *w = m / scale;
        }
    }

    let mut a = vec![0.0; n];
    for (i, &w) in lower.iter().enumerate() {
        a[i] = w;
        a[n - 1 - i] = -w;
    }
    Ok(a)
}

/// W statistic and p-value for the null hypothesis that `sample` is normal.
///
/// Ties are allowed. Samples above [`MAX_VALIDATED_N`] are still evaluated but
/// flagged through `large_n_warning`.
pub fn shapiro_wilk(sample: &[f64]) -> Result<SwResult> {
    let n = sample.len();
    if n < 3 {
        return Err(Error::insufficient(3, n));
    }
    if let Some(bad) = sample.iter().find(|x| !x.is_finite()) {
        return Err(Error::Domain(format!("sample contains non-finite value {bad}")));
    }
    let mut sorted = sample.to_vec();
    sorted.sort_by(f64::total_cmp);
    if sorted[0] == sorted[n - 1] {
        return Err(Error::Degenerate("zero variance; Shapiro-Wilk W is undefined".into()));
    }

    let a = sw_coefficients(n)?;
    let mean = crate::moments::mean(&sorted);
    let mut ss = 0.0;
    let mut b = 0.0;
    for (ai, x) in a.iter().zip(&sorted) {
        let d = x - mean;
        ss += d * d;
        b += ai * d;
    }
    let a_norm = a.iter().map(|v| v * v).sum::<f64>();
    let denom = ss * a_norm;
    let root = denom.sqrt();
    let b = b.abs().min(root);
    // 1 - W as a difference of squares keeps precision when W is near 1.
    let one_minus_w = ((root - b) * (root + b) / denom).max(0.0);
    let w = 1.0 - one_minus_w;

    Ok(SwResult { n, w, p_value: p_value(n, w, one_minus_w), large_n_warning: n > MAX_VALIDATED_N })
}

fn p_value(n: usize, w: f64, one_minus_w: f64) -> f64 {
    let nf = n as f64;
    let p = if n == 3 {
        // Exact null law of W for three observations.
        let floor = 0.75f64.sqrt().asin();
        6.0 / PI * (w.sqrt().asin() - floor)
    } else if n <= 11 {
        let gamma = poly(&SMALL_GAMMA, nf);
        let y = one_minus_w.ln();
        if y >= gamma {
            return 0.0;
        }
        let y = -(gamma - y).ln();
        let mean = poly(&SMALL_MEAN, nf);
        let sd = poly(&SMALL_LOG_SD, nf).exp();
        standard_normal_sf((y - mean) / sd)
    } else {
        let ln_n = nf.ln();
        let mean = poly(&LARGE_MEAN, ln_n);
        let sd = poly(&LARGE_LOG_SD, ln_n).exp();
        standard_normal_sf((one_minus_w.ln() - mean) / sd)
    };
    p.clamp(0.0, 1.0)
}
