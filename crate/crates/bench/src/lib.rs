//! Synthetic fixtures shared by the benchmarks.

use chrono::{Days, NaiveDate};
use fattail::distfit::{sample_laplace, LaplaceParams, RngSeed};
use fattail::market_data::write_ohlcv_csv;
use fattail::{PricePoint, PriceSeries};

/// Daily-scale Laplace returns.
pub fn laplace_returns(n: usize, seed: u64) -> Vec<f64> {
    let p = LaplaceParams::new(0.0004, 0.008).expect("valid parameters");
    sample_laplace(n, &p, RngSeed(seed))
}

/// A Yahoo-style OHLCV CSV with `rows` rows whose prices compound the given seed's returns.
pub fn ohlcv_csv(rows: usize, seed: u64) -> String {
    let start = NaiveDate::from_ymd_opt(2012, 1, 3).unwrap();
    let mut price = 100.0;
    let mut points = Vec::with_capacity(rows);
    let returns = laplace_returns(rows.saturating_sub(1), seed);
    for i in 0..rows {
        if i > 0 {
            price *= 1.0 + returns[i - 1];
        }
        points.push(PricePoint {
            date: start + Days::new(i as u64),
            open: price,
            high: price,
            low: price,
            close: price,
            adj_close: price,
            volume: 1_000_000,
        });
    }
    write_ohlcv_csv(&PriceSeries::new("SYN", points).expect("distinct dates"))
}
