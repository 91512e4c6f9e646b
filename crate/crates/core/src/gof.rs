//! Empirical CDFs and goodness-of-fit scores for fitted Normal and Laplace
//! models.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::distfit::{
    fit_laplace, fit_normal, laplace_cdf, laplace_ln_pdf, laplace_pdf, normal_cdf, normal_ln_pdf, normal_pdf,
    LaplaceParams, NormalParams,
};
use crate::error::{Error, Result};

/// Both candidate families have two free parameters.
pub const PARAMS_PER_FAMILY: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Normal,
    Laplace,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Normal => "normal",
            Family::Laplace => "laplace",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FittedModel {
    Normal(NormalParams),
    Laplace(LaplaceParams),
}

impl FittedModel {
    pub fn fit(family: Family, sample: &[f64]) -> Result<Self> {
        Ok(match family {
            Family::Normal => FittedModel::Normal(fit_normal(sample)?),
            Family::Laplace => FittedModel::Laplace(fit_laplace(sample)?),
        })
    }

    pub fn family(&self) -> Family {
        match self {
            FittedModel::Normal(_) => Family::Normal,
            FittedModel::Laplace(_) => Family::Laplace,
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        match self {
            FittedModel::Normal(p) => normal_cdf(x, p),
            FittedModel::Laplace(p) => laplace_cdf(x, p),
        }
    }

    pub fn pdf(&self, x: f64) -> f64 {
        match self {
            FittedModel::Normal(p) => normal_pdf(x, p),
            FittedModel::Laplace(p) => laplace_pdf(x, p),
        }
    }

    pub fn ln_pdf(&self, x: f64) -> f64 {
        match self {
            FittedModel::Normal(p) => normal_ln_pdf(x, p),
            FittedModel::Laplace(p) => laplace_ln_pdf(x, p),
        }
    }
}

/// Right-continuous step function `F_n(x) = #{x_i <= x} / n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EcdfCurve {
    sorted_x: Vec<f64>,
    steps: Vec<f64>,
}

impl EcdfCurve {
    pub fn sorted_x(&self) -> &[f64] {
        &self.sorted_x
    }

    /// `steps[i] = (i + 1) / n`, the height just after `sorted_x[i]`.
    pub fn steps(&self) -> &[f64] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.sorted_x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted_x.is_empty()
    }

    pub fn eval(&self, x: f64) -> f64 {
        let count = self.sorted_x.partition_point(|&v| v <= x);
        count as f64 / self.sorted_x.len() as f64
    }
}

pub fn ecdf(sample: &[f64]) -> Result<EcdfCurve> {
    if sample.is_empty() {
        return Err(Error::insufficient(1, 0));
    }
    let mut sorted_x = sample.to_vec();
    sorted_x.sort_by(f64::total_cmp);
    let n = sorted_x.len() as f64;
    let steps = (1..=sorted_x.len()).map(|i| i as f64 / n).collect();
    Ok(EcdfCurve { sorted_x, steps })
}

/// Kolmogorov-Smirnov distance between the sample's ECDF and `cdf`:
/// `max_i max(i/n - F(x_(i)), F(x_(i)) - (i-1)/n)`.
///
/// Fails if `cdf` produces a value outside [0, 1] (NaN included).
pub fn ks_statistic<F>(sample: &[f64], cdf: F) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if sample.is_empty() {
        return Err(Error::insufficient(1, 0));
    }
    let mut sorted = sample.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x);
        if !(0.0..=1.0).contains(&f) {
            return Err(Error::Domain(format!("cdf returned {f} at x = {x}")));
        }
        let above = (i + 1) as f64 / n - f;
        let below = f - i as f64 / n;
        d = d.max(above).max(below);
    }
    Ok(d)
}

/// `Σ ln pdf(x_i)` under `model`.
pub fn log_likelihood(sample: &[f64], model: &FittedModel) -> Result<f64> {
    if sample.is_empty() {
        return Err(Error::insufficient(1, 0));
    }
    Ok(match model {
        FittedModel::Laplace(p) => {
            let n = sample.len() as f64;
            let abs_dev: f64 = sample.iter().map(|x| (x - p.mu()).abs()).sum();
            -n * (2.0 * p.lambda()).ln() - abs_dev / p.lambda()
        }
        FittedModel::Normal(_) => sample.iter().map(|&x| model.ln_pdf(x)).sum(),
    })
}

pub fn aic(log_likelihood: f64) -> f64 {
    2.0 * PARAMS_PER_FAMILY - 2.0 * log_likelihood
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitScore {
    pub model: FittedModel,
    pub ks_distance: f64,
    pub log_likelihood: f64,
    pub aic: f64,
}

impl FitScore {
    pub fn family(&self) -> Family {
        self.model.family()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GofReport {
    pub normal: FitScore,
    pub laplace: FitScore,
    pub better_fit: Family,
}

impl GofReport {
    pub fn score(&self, family: Family) -> &FitScore {
        match family {
            Family::Normal => &self.normal,
            Family::Laplace => &self.laplace,
        }
    }
}

fn score(sample: &[f64], family: Family) -> Result<FitScore> {
    let model = FittedModel::fit(family, sample)?;
    let ks_distance = ks_statistic(sample, |x| model.cdf(x))?;
    let ll = log_likelihood(sample, &model)?;
    Ok(FitScore { model, ks_distance, log_likelihood: ll, aic: aic(ll) })
}

/// Fits both families and scores them. The better fit has the smaller AIC;
/// exact AIC ties go to the smaller KS distance, then to Normal.
pub fn compare_fits(sample: &[f64]) -> Result<GofReport> {
    if sample.len() < 4 {
        return Err(Error::insufficient(4, sample.len()));
    }
    let normal = score(sample, Family::Normal)?;
    let laplace = score(sample, Family::Laplace)?;
    let laplace_wins = laplace.aic < normal.aic || (laplace.aic == normal.aic && laplace.ks_distance < normal.ks_distance);
    let better_fit = if laplace_wins { Family::Laplace } else { Family::Normal };
    Ok(GofReport { normal, laplace, better_fit })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distfit::{laplace_quantile, sample_laplace, sample_normal, RngSeed};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn unit_laplace() -> LaplaceParams {
        LaplaceParams::new(0.0, 1.0).unwrap()
    }

    #[test]
    fn ecdf_evaluation() {
        let e = ecdf(&[3.0, 1.0, 2.0]).unwrap();
        assert_abs_diff_eq!(e.eval(2.0), 2.0 / 3.0);
        assert_eq!(e.eval(0.5), 0.0);
        assert_eq!(e.eval(3.0), 1.0);
        assert_eq!(e.sorted_x(), [1.0, 2.0, 3.0]);
        assert_eq!(*e.steps().last().unwrap(), 1.0);
        assert_eq!(ecdf(&[]), Err(Error::InsufficientData { required: 1, actual: 0 }));
    }

    #[test]
    fn ecdf_handles_ties() {
        let e = ecdf(&[1.0, 1.0, 2.0, 2.0]).unwrap();
        assert_eq!(e.eval(1.0), 0.5);
        assert_eq!(e.eval(1.999), 0.5);
    }

    #[test]
    fn ks_single_point() {
        let p = unit_laplace();
        assert_eq!(ks_statistic(&[0.0], |x| laplace_cdf(x, &p)).unwrap(), 0.5);
    }

    #[test]
    fn ks_at_quartiles() {
        let p = LaplaceParams::new(0.4, 2.5).unwrap();
        let xs = [laplace_quantile(0.25, &p).unwrap(), laplace_quantile(0.75, &p).unwrap()];
        assert_abs_diff_eq!(ks_statistic(&xs, |x| laplace_cdf(x, &p)).unwrap(), 0.25, epsilon = 1e-12);
    }

    #[test]
    fn ks_rejects_bad_cdf() {
        assert!(matches!(ks_statistic(&[0.0], |_| 1.5), Err(Error::Domain(_))));
        assert!(matches!(ks_statistic(&[0.0], |_| f64::NAN), Err(Error::Domain(_))));
        assert!(matches!(ks_statistic(&[], |_| 0.5), Err(Error::InsufficientData { .. })));
    }

    #[test]
    fn log_likelihood_closed_forms() {
        let lap = FittedModel::Laplace(unit_laplace());
        assert_abs_diff_eq!(log_likelihood(&[0.0], &lap).unwrap(), 0.5f64.ln(), epsilon = 1e-15);
        let norm = FittedModel::Normal(NormalParams::STANDARD);
        assert_abs_diff_eq!(log_likelihood(&[0.0], &norm).unwrap(), -0.918_938_533_204_672_7, epsilon = 1e-14);
        let xs = [0.3, -1.2, 2.2, 0.0];
        let direct: f64 = xs.iter().map(|&x| lap.pdf(x).ln()).sum();
        assert_abs_diff_eq!(log_likelihood(&xs, &lap).unwrap(), direct, epsilon = 1e-12);
    }

    #[test]
    fn compare_fits_prefers_generating_family() {
        let lap = sample_laplace(5000, &unit_laplace(), RngSeed(17));
        assert_eq!(compare_fits(&lap).unwrap().better_fit, Family::Laplace);
        let norm = sample_normal(5000, &NormalParams::STANDARD, RngSeed(17));
        assert_eq!(compare_fits(&norm).unwrap().better_fit, Family::Normal);
    }

    #[test]
    fn compare_fits_structure() {
        let r = compare_fits(&[0.01, -0.02, 0.005, 0.03, -0.01]).unwrap();
        for f in [Family::Normal, Family::Laplace] {
            let s = r.score(f);
            assert_eq!(s.family(), f);
            assert!(s.ks_distance.is_finite() && s.log_likelihood.is_finite() && s.aic.is_finite());
            assert_abs_diff_eq!(s.aic, 4.0 - 2.0 * s.log_likelihood, epsilon = 1e-12);
        }
        assert!(matches!(compare_fits(&[1.0, 2.0, 3.0]), Err(Error::InsufficientData { .. })));
        assert!(matches!(compare_fits(&[1.0; 8]), Err(Error::Degenerate(_))));
    }

    #[test]
    fn report_serialises_with_family_tags() {
        let r = compare_fits(&[0.01, -0.02, 0.005, 0.03, -0.01]).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains(r#""family":"laplace""#));
        let back: GofReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }

    fn sample_strategy() -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(-10.0f64..10.0, 4..80).prop_filter("spread", |v| v.iter().any(|&x| x != v[0]))
    }

    proptest! {
        #[test]
        fn ecdf_permutation_invariant(mut xs in sample_strategy(), seed in any::<u64>()) {
            let before = ecdf(&xs).unwrap();
            let n = xs.len();
            let mut s = seed;
            for i in (1..n).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                xs.swap(i, (s >> 33) as usize % (i + 1));
            }
            prop_assert_eq!(ecdf(&xs).unwrap(), before);
        }

        #[test]
        fn ks_against_own_ecdf(xs in sample_strategy()) {
            let e = ecdf(&xs).unwrap();
            let d = ks_statistic(&xs, |x| e.eval(x)).unwrap();
            prop_assert!(d <= 1.0 / xs.len() as f64 + 1e-15);
        }

        #[test]
        fn ks_affine_invariant(xs in sample_strategy(), scale in 0.1f64..10.0, shift in -5.0f64..5.0) {
            let p = LaplaceParams::new(0.5, 1.3).unwrap();
            let q = LaplaceParams::new(scale * 0.5 + shift, scale * 1.3).unwrap();
            let moved: Vec<f64> = xs.iter().map(|x| scale * x + shift).collect();
            let d1 = ks_statistic(&xs, |x| laplace_cdf(x, &p)).unwrap();
            let d2 = ks_statistic(&moved, |x| laplace_cdf(x, &q)).unwrap();
            prop_assert!((d1 - d2).abs() < 1e-9);
        }

        #[test]
        fn aic_order_matches_likelihood_order(xs in sample_strategy()) {
            let r = compare_fits(&xs).unwrap();
            prop_assert_eq!(r.normal.aic < r.laplace.aic, r.normal.log_likelihood > r.laplace.log_likelihood);
        }

        #[test]
        fn laplace_fit_maximises_likelihood(xs in sample_strategy()) {
            let fit = fit_laplace(&xs).unwrap();
            let nudged = LaplaceParams::new(fit.mu() + 0.01 * fit.lambda(), fit.lambda()).unwrap();
            let at_fit = log_likelihood(&xs, &FittedModel::Laplace(fit)).unwrap();
            let off = log_likelihood(&xs, &FittedModel::Laplace(nudged)).unwrap();
            prop_assert!(at_fit >= off - 1e-12);
        }
    }
}
