//! Report assembly and plot data: the per-symbol analysis row, return
//! histograms, and ECDF-versus-model CDF tables rendered as CSV or SVG.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::distfit::{LaplaceParams, NormalParams};
use crate::error::{Error, Result};
use crate::gof::{self, ecdf, Family, FittedModel};
use crate::market_data::{simple_returns, ParsedPrices, PriceField, ReturnSeries};
use crate::moments::{excess_kurtosis, skewness};
use crate::normality::{shapiro_wilk, MAX_VALIDATED_N};

/// One row of the summary table for a single return series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub symbol: String,
    pub n: usize,
    pub skew: f64,
    pub excess_kurtosis: f64,
    pub shapiro_w: f64,
    pub shapiro_p: f64,
    pub normal_fit: NormalParams,
    pub laplace_fit: LaplaceParams,
    pub ks_normal: f64,
    pub ks_laplace: f64,
    pub log_lik_normal: f64,
    pub log_lik_laplace: f64,
    pub aic_normal: f64,
    pub aic_laplace: f64,
    pub better_fit: Family,
    pub warnings: Vec<String>,
}

/// Runs moments, Shapiro-Wilk and both fits over a return series.
pub fn analyze_returns(returns: &ReturnSeries, mut warnings: Vec<String>) -> Result<AnalysisReport> {
    let xs = &returns.values;
    let sw = shapiro_wilk(xs)?;
    if sw.large_n_warning {
        warnings.push(format!(
            "n = {} exceeds {MAX_VALIDATED_N}; Shapiro-Wilk p-value is an extrapolation",
            sw.n
        ));
    }
    let gof = gof::compare_fits(xs)?;
    let (FittedModel::Normal(normal_fit), FittedModel::Laplace(laplace_fit)) = (gof.normal.model, gof.laplace.model)
    else {
        unreachable!("compare_fits scores each family under its own slot");
    };
    Ok(AnalysisReport {
        symbol: returns.symbol.clone(),
        n: xs.len(),
        skew: skewness(xs)?,
        excess_kurtosis: excess_kurtosis(xs)?,
        shapiro_w: sw.w,
        shapiro_p: sw.p_value,
        normal_fit,
        laplace_fit,
        ks_normal: gof.normal.ks_distance,
        ks_laplace: gof.laplace.ks_distance,
        log_lik_normal: gof.normal.log_likelihood,
        log_lik_laplace: gof.laplace.log_likelihood,
        aic_normal: gof.normal.aic,
        aic_laplace: gof.laplace.aic,
        better_fit: gof.better_fit,
        warnings,
    })
}

/// Price file to report: returns on `field`, then [`analyze_returns`].
pub fn analyze_prices(parsed: &ParsedPrices, field: PriceField) -> Result<AnalysisReport> {
    let returns = simple_returns(&parsed.series, field)?;
    let warnings = parsed.warnings.iter().map(|w| w.to_string()).collect();
    analyze_returns(&returns, warnings)
}

/// Formats `x` with six significant digits.
pub fn sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if (-4..6).contains(&exp) {
        let decimals = (5 - exp).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.5e}")
    }
}

const MARKDOWN_COLUMNS: [&str; 17] = [
    "Sample",
    "N",
    "Skew",
    "Kurtosis",
    "W",
    "p-value",
    "Normal mean",
    "Normal sigma",
    "Laplace mu",
    "Laplace lambda",
    "KS normal",
    "KS laplace",
    "LL normal",
    "LL laplace",
    "AIC normal",
    "AIC laplace",
    "Better fit",
];

impl AnalysisReport {
    /// Table cells in [`MARKDOWN_COLUMNS`] order.
    pub fn cells(&self) -> Vec<String> {
        let mut cells = vec![self.symbol.clone(), self.n.to_string()];
        cells.extend(
            [
                self.skew,
                self.excess_kurtosis,
                self.shapiro_w,
                self.shapiro_p,
                self.normal_fit.mean(),
                self.normal_fit.sigma(),
                self.laplace_fit.mu(),
                self.laplace_fit.lambda(),
                self.ks_normal,
                self.ks_laplace,
                self.log_lik_normal,
                self.log_lik_laplace,
                self.aic_normal,
                self.aic_laplace,
            ]
            .into_iter()
            .map(sig6),
        );
        cells.push(self.better_fit.to_string());
        cells
    }
}

/// Aligned Markdown table, one row per report, followed by any warnings.
pub fn render_markdown(reports: &[AnalysisReport]) -> String {
    let rows: Vec<Vec<String>> = reports.iter().map(AnalysisReport::cells).collect();
    let widths: Vec<usize> = MARKDOWN_COLUMNS
        .iter()
        .enumerate()
        .map(|(c, h)| rows.iter().map(|r| r[c].len()).chain([h.len(), 3]).max().unwrap_or(3))
        .collect();

    let mut out = String::new();
    let line = |out: &mut String, cells: &mut dyn Iterator<Item = String>| {
        out.push('|');
        for (cell, w) in cells.zip(&widths) {
            let _ = write!(out, " {cell:<w$} |");
        }
        out.push('\n');
    };
    line(&mut out, &mut MARKDOWN_COLUMNS.iter().map(|s| s.to_string()));
    line(&mut out, &mut widths.iter().map(|&w| "-".repeat(w)));
    for row in rows {
        line(&mut out, &mut row.into_iter());
    }
    let warnings: Vec<String> =
        reports.iter().flat_map(|r| r.warnings.iter().map(move |w| format!("- {}: {w}", r.symbol))).collect();
    if !warnings.is_empty() {
        out.push_str("\nWarnings:\n");
        for w in warnings {
            out.push_str(&w);
            out.push('\n');
        }
    }
    out
}

/// Equal-width histogram over `[min, max]`, densities integrating to one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HistogramData {
    pub bin_edges: Vec<f64>,
    pub counts: Vec<u64>,
    pub densities: Vec<f64>,
}

/// A constant sample gets one bin of width 1 centred on the value, whatever
/// `bins` asks for.
pub fn histogram(values: &[f64], bins: usize) -> Result<HistogramData> {
    if bins == 0 {
        return Err(Error::Domain("bin count must be at least 1".into()));
    }
    if values.is_empty() {
        return Err(Error::insufficient(1, 0));
    }
    let (min, max) = values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    if !(min.is_finite() && max.is_finite()) {
        return Err(Error::Domain("histogram input must be finite".into()));
    }
    let n = values.len() as f64;

    if min == max {
        return Ok(HistogramData {
            bin_edges: vec![min - 0.5, min + 0.5],
            counts: vec![values.len() as u64],
            densities: vec![1.0],
        });
    }

    let width = (max - min) / bins as f64;
    let mut bin_edges: Vec<f64> = (0..bins).map(|i| min + width * i as f64).collect();
    bin_edges.push(max);
    let mut counts = vec![0u64; bins];
    for &v in values {
        // last bin is closed on the right
        let idx = (((v - min) / width) as usize).min(bins - 1);
        counts[idx] += 1;
    }
    let densities = counts
        .iter()
        .zip(bin_edges.windows(2))
        .map(|(&c, e)| c as f64 / (n * (e[1] - e[0])))
        .collect();
    Ok(HistogramData { bin_edges, counts, densities })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EcdfRow {
    pub x: f64,
    pub ecdf: f64,
    pub normal_cdf: f64,
    pub laplace_cdf: f64,
}

/// ECDF and both fitted model CDFs at every sorted return.
pub fn ecdf_table(values: &[f64]) -> Result<Vec<EcdfRow>> {
    let normal = FittedModel::fit(Family::Normal, values)?;
    let laplace = FittedModel::fit(Family::Laplace, values)?;
    let curve = ecdf(values)?;
    Ok(curve
        .sorted_x()
        .iter()
        .map(|&x| EcdfRow { x, ecdf: curve.eval(x), normal_cdf: normal.cdf(x), laplace_cdf: laplace.cdf(x) })
        .collect())
}

pub fn ecdf_csv(rows: &[EcdfRow]) -> String {
    let mut out = String::from("x,ecdf,normal_cdf,laplace_cdf\n");
    for r in rows {
        let _ = writeln!(out, "{},{},{},{}", r.x, r.ecdf, r.normal_cdf, r.laplace_cdf);
    }
    out
}

const SVG_WIDTH: f64 = 800.0;
const SVG_HEIGHT: f64 = 500.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 30.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 60.0;
const CURVE_POINTS: usize = 400;
const TICKS: usize = 5;

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Standalone SVG: the ECDF as a step line plus both fitted CDFs and a legend.
pub fn ecdf_svg(title: &str, values: &[f64]) -> Result<String> {
    let normal = FittedModel::fit(Family::Normal, values)?;
    let laplace = FittedModel::fit(Family::Laplace, values)?;
    let curve = ecdf(values)?;
    let xs = curve.sorted_x();
    let (lo, hi) = (xs[0], xs[xs.len() - 1]);

    let plot_w = SVG_WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = SVG_HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let px = |x: f64| MARGIN_LEFT + (x - lo) / (hi - lo) * plot_w;
    let py = |p: f64| MARGIN_TOP + (1.0 - p) * plot_h;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_WIDTH}" height="{SVG_HEIGHT}" viewBox="0 0 {SVG_WIDTH} {SVG_HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="24" text-anchor="middle" font-size="15">{}</text>"#,
        SVG_WIDTH / 2.0,
        xml_escape(title)
    );

    // axes and ticks
    let (x0, y0, x1, y1) = (MARGIN_LEFT, MARGIN_TOP + plot_h, MARGIN_LEFT + plot_w, MARGIN_TOP);
    let _ = writeln!(svg, r#"<line x1="{x0:.2}" y1="{y0:.2}" x2="{x1:.2}" y2="{y0:.2}" stroke="black"/>"#);
    let _ = writeln!(svg, r#"<line x1="{x0:.2}" y1="{y0:.2}" x2="{x0:.2}" y2="{y1:.2}" stroke="black"/>"#);
    for i in 0..=TICKS {
        let t = i as f64 / TICKS as f64;
        let (tx, ty) = (px(lo + t * (hi - lo)), py(t));
        let _ = writeln!(svg, r#"<line x1="{tx:.2}" y1="{y0:.2}" x2="{tx:.2}" y2="{:.2}" stroke="black"/>"#, y0 + 5.0);
        let _ = writeln!(
            svg,
            r#"<text x="{tx:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            y0 + 20.0,
            sig6(lo + t * (hi - lo))
        );
        let _ = writeln!(svg, r#"<line x1="{:.2}" y1="{ty:.2}" x2="{x0:.2}" y2="{ty:.2}" stroke="black"/>"#, x0 - 5.0);
        let _ = writeln!(svg, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{t:.1}</text>"#, x0 - 8.0, ty + 4.0);
    }
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">daily return</text>"#,
        MARGIN_LEFT + plot_w / 2.0,
        SVG_HEIGHT - 15.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="18" y="{:.2}" text-anchor="middle" transform="rotate(-90 18 {:.2})">F(x)</text>"#,
        MARGIN_TOP + plot_h / 2.0,
        MARGIN_TOP + plot_h / 2.0
    );

    let mut step = String::new();
    let mut prev = 0.0;
    for (&x, &s) in xs.iter().zip(curve.steps()) {
        let _ = write!(step, "{:.2},{:.2} {:.2},{:.2} ", px(x), py(prev), px(x), py(s));
        prev = s;
    }
    let smooth = |model: &FittedModel| {
        let mut pts = String::new();
        for i in 0..=CURVE_POINTS {
            let x = lo + (hi - lo) * i as f64 / CURVE_POINTS as f64;
            let _ = write!(pts, "{:.2},{:.2} ", px(x), py(model.cdf(x)));
        }
        pts
    };
    let series = [
        ("ECDF", "black", step),
        ("Normal fit", "#1f77b4", smooth(&normal)),
        ("Laplace fit", "#d62728", smooth(&laplace)),
    ];
    for (_, color, pts) in &series {
        let _ = writeln!(svg, r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#, pts.trim_end());
    }

    for (i, (label, color, _)) in series.iter().enumerate() {
        let ly = MARGIN_TOP + 15.0 + 18.0 * i as f64;
        let lx = MARGIN_LEFT + 15.0;
        let _ = writeln!(svg, r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="2"/>"#, lx + 25.0);
        let _ = writeln!(svg, r#"<text x="{:.2}" y="{:.2}">{label}</text>"#, lx + 32.0, ly + 4.0);
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
