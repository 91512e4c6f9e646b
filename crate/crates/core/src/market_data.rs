//! OHLCV ingestion and simple daily returns.
//!
//! Input files follow the Yahoo Finance export layout:
//!
//! ```text
//! Date,Open,High,Low,Close,Adj Close,Volume
//! 2012-01-03,1258.859985,1284.619995,1258.859985,1277.060059,1277.060059,3943710000
//! ```
//!
//! Returns are taken between successive rows regardless of calendar gaps.

use std::fmt::Write as _;
use std::str::FromStr;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const OHLCV_HEADER: [&str; 7] = ["Date", "Open", "High", "Low", "Close", "Adj Close", "Volume"];

const DATE_FORMAT: &str = "%Y-%m-%d";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PricePoint {
    pub date: NaiveDate,
    pub open: f64,
    pub high: f64,
    pub low: f64,
    pub close: f64,
    pub adj_close: f64,
    pub volume: u64,
}

impl PricePoint {
    pub fn price(&self, field: PriceField) -> f64 {
        match field {
            PriceField::Close => self.close,
            PriceField::AdjClose => self.adj_close,
        }
    }
}

/// Which price column drives the return calculation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PriceField {
    Close,
    /// Split and dividend adjusted close.
    #[default]
    AdjClose,
}

impl FromStr for PriceField {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "close" => Ok(PriceField::Close),
            "adj_close" => Ok(PriceField::AdjClose),
            other => Err(Error::Domain(format!("unknown price field `{other}`"))),
        }
    }
}

/// Price history for one instrument, strictly ascending by date.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PriceSeries {
    pub symbol: String,
    points: Vec<PricePoint>,
}

impl PriceSeries {
    /// Builds a series from points in any order. Duplicate dates are rejected.
    pub fn new(symbol: impl Into<String>, mut points: Vec<PricePoint>) -> Result<Self> {
        points.sort_by_key(|p| p.date);
        if let Some(w) = points.windows(2).find(|w| w[0].date == w[1].date) {
            return Err(Error::Format(format!("duplicate date {}", w[0].date)));
        }
        Ok(PriceSeries { symbol: symbol.into(), points })
    }

    pub fn points(&self) -> &[PricePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// A data row that was skipped rather than rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowWarning {
    pub line: u64,
    pub message: String,
}

impl std::fmt::Display for RowWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParsedPrices {
    pub series: PriceSeries,
    pub warnings: Vec<RowWarning>,
}

/// Parses a Yahoo-format OHLCV CSV document.
///
/// Rows carrying the literal `null` in any field are skipped and reported in
/// `warnings`. Any other malformed row is a hard error carrying its line number.
pub fn parse_ohlcv_csv(text: &str, symbol: &str) -> Result<ParsedPrices> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut records = reader.records();

    let header = match records.next() {
        Some(rec) => rec.map_err(|e| Error::Format(e.to_string()))?,
        None => return Err(Error::Format("missing header".into())),
    };
    let header_fields: Vec<&str> = header.iter().map(|f| f.trim_start_matches('\u{feff}').trim()).collect();
    if header_fields != OHLCV_HEADER {
        return Err(Error::Format(format!(
            "unexpected header `{}`, expected `{}`",
            header_fields.join(","),
            OHLCV_HEADER.join(",")
        )));
    }

    let mut rows: Vec<(u64, PricePoint)> = Vec::new();
    let mut warnings = Vec::new();
    for rec in records {
        let rec = rec.map_err(|e| Error::Format(e.to_string()))?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() == 1 && rec[0].trim().is_empty() {
            continue;
        }
        if rec.len() != OHLCV_HEADER.len() {
            return Err(Error::Row { line, message: format!("expected 7 fields, found {}", rec.len()) });
        }
        if rec.iter().any(|f| f.trim() == "null") {
            warnings.push(RowWarning { line, message: "row contains null values; skipped".into() });
            continue;
        }
        rows.push((line, parse_row(&rec, line)?));
    }

    if rows.is_empty() {
        return Err(Error::EmptyInput);
    }
    rows.sort_by_key(|(_, p)| p.date);
    if let Some(w) = rows.windows(2).find(|w| w[0].1.date == w[1].1.date) {
        let line = w[0].0.max(w[1].0);
        return Err(Error::Row { line, message: format!("duplicate date {}", w[1].1.date) });
    }
    let points = rows.into_iter().map(|(_, p)| p).collect();
    Ok(ParsedPrices { series: PriceSeries { symbol: symbol.to_owned(), points }, warnings })
}

fn parse_row(rec: &csv::StringRecord, line: u64) -> Result<PricePoint> {
    let row_err = |message: String| Error::Row { line, message };
    let date = NaiveDate::parse_from_str(rec[0].trim(), DATE_FORMAT)
        .map_err(|e| row_err(format!("bad date `{}`: {e}", &rec[0])))?;

    let price = |idx: usize| -> Result<f64> {
        let raw = rec[idx].trim();
        let v: f64 = raw.parse().map_err(|_| row_err(format!("bad {} value `{raw}`", OHLCV_HEADER[idx])))?;
        if !v.is_finite() || v <= 0.0 {
            return Err(row_err(format!("{} must be a positive finite price, got {raw}", OHLCV_HEADER[idx])));
        }
        Ok(v)
    };

    let raw_volume = rec[6].trim();
    // Some exports write volume as a float ("1234.0").
    let volume = raw_volume
        .parse::<u64>()
        .ok()
        .or_else(|| {
            raw_volume
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite() && *v >= 0.0 && v.fract() == 0.0 && *v <= u64::MAX as f64)
                .map(|v| v as u64)
        })
        .ok_or_else(|| row_err(format!("bad Volume value `{raw_volume}`")))?;

    Ok(PricePoint {
        date,
        open: price(1)?,
        high: price(2)?,
        low: price(3)?,
        close: price(4)?,
        adj_close: price(5)?,
        volume,
    })
}

/// Writes a series back out in the same CSV layout `parse_ohlcv_csv` reads.
pub fn write_ohlcv_csv(series: &PriceSeries) -> String {
    let mut out = OHLCV_HEADER.join(",");
    out.push('\n');
    for p in &series.points {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            p.date.format(DATE_FORMAT),
            p.open,
            p.high,
            p.low,
            p.close,
            p.adj_close,
            p.volume
        );
    }
    out
}

/// Simple returns for one instrument. `dates` is absent for series read from
/// bare return files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReturnSeries {
    pub symbol: String,
    pub dates: Option<Vec<NaiveDate>>,
    pub values: Vec<f64>,
}

impl ReturnSeries {
    pub fn undated(symbol: impl Into<String>, values: Vec<f64>) -> Self {
        ReturnSeries { symbol: symbol.into(), dates: None, values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// `(P_t - P_{t-1}) / P_{t-1}` over consecutive points, dated at the later point.
pub fn simple_returns(prices: &PriceSeries, field: PriceField) -> Result<ReturnSeries> {
    let points = prices.points();
    if points.len() < 2 {
        return Err(Error::insufficient(2, points.len()));
    }
    let mut dates = Vec::with_capacity(points.len() - 1);
    let mut values = Vec::with_capacity(points.len() - 1);
    for (i, w) in points.windows(2).enumerate() {
        let prev = w[0].price(field);
        if prev == 0.0 {
            return Err(Error::DivisionDomain { index: i });
        }
        values.push((w[1].price(field) - prev) / prev);
        dates.push(w[1].date);
    }
    Ok(ReturnSeries { symbol: prices.symbol.clone(), dates: Some(dates), values })
}

/// Reads a bare list of returns, one per line. Blank lines are ignored.
pub fn parse_returns(text: &str, symbol: &str) -> Result<ReturnSeries> {
    let mut values = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let raw = raw.trim();
        if raw.is_empty() {
            continue;
        }
        let v: f64 = raw
            .parse()
            .map_err(|_| Error::Row { line: idx as u64 + 1, message: format!("bad return value `{raw}`") })?;
        if !v.is_finite() {
            return Err(Error::Row { line: idx as u64 + 1, message: format!("non-finite return `{raw}`") });
        }
        values.push(v);
    }
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(ReturnSeries::undated(symbol, values))
}

/// One value per line, shortest round-trip formatting.
pub fn write_returns(values: &[f64]) -> String {
    let mut out = String::with_capacity(values.len() * 22);
    for v in values {
        let _ = writeln!(out, "{v}");
    }
    out
}
