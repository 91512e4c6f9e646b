//! Normality diagnostics and Normal vs Laplace modelling of daily returns.
//!
//! The pipeline runs from Yahoo-style OHLCV files to simple daily returns,
//! standardized moments, the Shapiro-Wilk test, and goodness-of-fit scores for
//! fitted Normal and Laplace models:
//!
//! ```
//! use fattail::{compare_fits, distfit, shapiro_wilk, Family, LaplaceParams, RngSeed};
//!
//! let params = LaplaceParams::new(0.0, 0.01).unwrap();
//! let returns = distfit::sample_laplace(1879, &params, RngSeed(7));
//! let sw = shapiro_wilk(&returns).unwrap();
//! assert!(sw.p_value < 1e-6);
//! assert_eq!(compare_fits(&returns).unwrap().better_fit, Family::Laplace);
//! ```

pub mod distfit;
pub mod error;
pub mod gof;
pub mod market_data;
pub mod moments;
pub mod normality;
pub mod report;

pub use distfit::{
    fit_laplace, fit_normal, laplace_cdf, laplace_pdf, median, normal_cdf, normal_quantile, sample_laplace,
    sample_normal, LaplaceParams, NormalParams, RngSeed,
};
pub use error::{Error, ErrorKind, Result};
pub use gof::{compare_fits, ecdf, ks_statistic, log_likelihood, EcdfCurve, Family, FitScore, FittedModel, GofReport};
pub use market_data::{parse_ohlcv_csv, simple_returns, PriceField, PricePoint, PriceSeries, ReturnSeries};
pub use moments::{central_moment, excess_kurtosis, skewness, MomentsReport};
pub use normality::{shapiro_wilk, sw_coefficients, SwResult};
pub use report::{AnalysisReport, HistogramData};
