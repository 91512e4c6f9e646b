//! Population (biased) sample moments.
//!
//! Skewness is `m3 / m2^1.5` and kurtosis is Fisher's excess form
//! `m4 / m2^2 - 3`, with no small-sample correction. Everything is computed
//! in two passes: the mean first, then centered powers.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const MAX_ORDER: u32 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentsReport {
    pub n: usize,
    pub mean: f64,
    pub m2: f64,
    pub m3: f64,
    pub m4: f64,
    /// NaN when the sample has no spread.
    pub skew: f64,
    /// NaN when the sample has no spread.
    pub excess_kurtosis: f64,
}

impl MomentsReport {
    pub fn from_sample(sample: &[f64]) -> Result<Self> {
        if sample.is_empty() {
            return Err(Error::insufficient(1, 0));
        }
        let mean = mean(sample);
        let (mut m2, mut m3, mut m4) = (0.0, 0.0, 0.0);
        for &x in sample {
            let d = x - mean;
            let d2 = d * d;
            m2 += d2;
            m3 += d2 * d;
            m4 += d2 * d2;
        }
        let n = sample.len() as f64;
        let (m2, m3, m4) = (m2 / n, m3 / n, m4 / n);
        let (skew, excess_kurtosis) =
            if m2 > 0.0 { (m3 / m2.powf(1.5), m4 / (m2 * m2) - 3.0) } else { (f64::NAN, f64::NAN) };
        Ok(MomentsReport { n: sample.len(), mean, m2, m3, m4, skew, excess_kurtosis })
    }
}

/// Arithmetic mean with one refinement pass. Exact for constant samples.
pub(crate) fn mean(sample: &[f64]) -> f64 {
    let n = sample.len() as f64;
    let first = sample[0];
    if sample.iter().all(|&x| x == first) {
        return first;
    }
    let m = sample.iter().sum::<f64>() / n;
    m + sample.iter().map(|&x| x - m).sum::<f64>() / n
}

/// `(1/n) * sum((x_i - mean)^k)` for `1 <= k <= 8`.
pub fn central_moment(sample: &[f64], k: u32) -> Result<f64> {
    if !(1..=MAX_ORDER).contains(&k) {
        return Err(Error::Domain(format!("moment order must be in 1..={MAX_ORDER}, got {k}")));
    }
    if sample.is_empty() {
        return Err(Error::insufficient(1, 0));
    }
    let m = mean(sample);
    Ok(sample.iter().map(|&x| (x - m).powi(k as i32)).sum::<f64>() / sample.len() as f64)
}

fn spread_checked(sample: &[f64], required: usize) -> Result<MomentsReport> {
    if sample.len() < required {
        return Err(Error::insufficient(required, sample.len()));
    }
    let report = MomentsReport::from_sample(sample)?;
    if report.m2 <= 0.0 {
        return Err(Error::Degenerate("sample variance is zero".into()));
    }
    Ok(report)
}

pub fn skewness(sample: &[f64]) -> Result<f64> {
    spread_checked(sample, 3).map(|r| r.skew)
}

pub fn excess_kurtosis(sample: &[f64]) -> Result<f64> {
    spread_checked(sample, 4).map(|r| r.excess_kurtosis)
}
