//! CSV and SVG renderings of experiment results.
//!
//! Numbers in CSV files use Rust's shortest round-trip formatting.

use std::fmt::Write;

use super::{FigureSeriesResult, RowSummary, TableRowResult};
use crate::estimator::HillPlotSeries;

pub const TABLE_HEADER: &str = "row,seed,mu_input,sigma,L,R,mu_hill,mu_iter5,mu_direct";
pub const SUMMARY_HEADER: &str = "row,runs,mu_input,mean_mu_hill,std_mu_hill,mean_mu_iter5,std_mu_iter5";
pub const SERIES_HEADER: &str = "l,mu_hill,mu_improved";

pub fn table_csv(results: &[TableRowResult]) -> String {
    let mut out = format!("{TABLE_HEADER}\n");
    for r in results {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.row_id,
            r.seed,
            r.mu_input.value,
            r.sigma,
            r.observed_low,
            r.observed_high,
            r.mu_hill,
            r.mu_iter5,
            r.mu_direct
        )
        .unwrap();
    }
    out
}

pub fn summary_csv(summary: &[RowSummary]) -> String {
    let mut out = format!("{SUMMARY_HEADER}\n");
    for s in summary {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            s.row_id, s.runs, s.mu_input.value, s.mean_mu_hill, s.std_mu_hill, s.mean_mu_iter5, s.std_mu_iter5
        )
        .unwrap();
    }
    out
}

/// Absent estimates are written as empty fields.
pub fn series_csv(series: &HillPlotSeries) -> String {
    let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
    let mut out = format!("{SERIES_HEADER}\n");
    for p in &series.points {
        writeln!(out, "{},{},{}", p.l, opt(p.mu_hill), opt(p.mu_improved)).unwrap();
    }
    out
}

const WIDTH: f64 = 600.0;
const HEIGHT: f64 = 400.0;
const MARGIN_LEFT: f64 = 60.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 30.0;
const MARGIN_BOTTOM: f64 = 45.0;
/// Polylines are thinned to at most this many vertices.
const MAX_VERTICES: usize = 2000;

/// 600x400 Hill plot: classical estimate solid, improved dotted, expected
/// exponent dashed. The vertical range covers the 2nd-98th percentile of the
/// plotted values plus the expected line; points outside are clamped.
pub fn figure_svg(fig: &FigureSeriesResult) -> String {
    let pts = &fig.series.points;
    let (x_min, x_max) = match (pts.first(), pts.last()) {
        (Some(a), Some(b)) if b.l > a.l => (a.l as f64, b.l as f64),
        (Some(a), _) => (a.l as f64, a.l as f64 + 1.0),
        _ => (0.0, 1.0),
    };

    let mut ys: Vec<f64> = pts
        .iter()
        .flat_map(|p| [p.mu_hill, p.mu_improved])
        .flatten()
        .filter(|v| v.is_finite())
        .collect();
    ys.sort_by(f64::total_cmp);
    let (mut y_min, mut y_max) = if ys.is_empty() {
        (fig.expected_mu - 1.0, fig.expected_mu + 1.0)
    } else {
        let at = |q: f64| ys[((ys.len() - 1) as f64 * q).round() as usize];
        (at(0.02), at(0.98))
    };
    y_min = y_min.min(fig.expected_mu);
    y_max = y_max.max(fig.expected_mu);
    let pad = 0.05 * (y_max - y_min).max(1e-6);
    y_min -= pad;
    y_max += pad;

    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let sx = |x: f64| MARGIN_LEFT + (x - x_min) / (x_max - x_min) * plot_w;
    let sy = |y: f64| MARGIN_TOP + (y_max - y.clamp(y_min, y_max)) / (y_max - y_min) * plot_h;

    let stride = pts.len().div_ceil(MAX_VERTICES).max(1);
    let polyline = |pick: &dyn Fn(usize) -> Option<f64>| {
        let mut s = String::new();
        for (i, p) in pts.iter().enumerate() {
            if i % stride != 0 && i + 1 != pts.len() {
                continue;
            }
            if let Some(y) = pick(i).filter(|y| y.is_finite()) {
                write!(s, "{:.2},{:.2} ", sx(p.l as f64), sy(y)).unwrap();
            }
        }
        s.trim_end().to_string()
    };
    let hill = polyline(&|i| pts[i].mu_hill);
    let improved = polyline(&|i| pts[i].mu_improved);

    let mut svg = String::new();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    )
    .unwrap();
    writeln!(svg, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#).unwrap();
    writeln!(
        svg,
        r#"<rect x="{MARGIN_LEFT}" y="{MARGIN_TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black" stroke-width="1"/>"#
    )
    .unwrap();
    writeln!(
        svg,
        r#"<text x="{}" y="18" font-family="sans-serif" font-size="13" text-anchor="middle">Figure {} (example {}, seed {})</text>"#,
        WIDTH / 2.0,
        fig.figure_number,
        fig.example_id,
        fig.seed
    )
    .unwrap();

    for (value, anchor_y) in [(y_max, MARGIN_TOP), (y_min, MARGIN_TOP + plot_h)] {
        writeln!(
            svg,
            r#"<text x="{}" y="{:.2}" font-family="sans-serif" font-size="11" text-anchor="end">{:.3}</text>"#,
            MARGIN_LEFT - 5.0,
            anchor_y + 4.0,
            value
        )
        .unwrap();
    }
    for (value, anchor_x, align) in [(x_min, MARGIN_LEFT, "start"), (x_max, MARGIN_LEFT + plot_w, "end")] {
        writeln!(
            svg,
            r#"<text x="{anchor_x}" y="{:.2}" font-family="sans-serif" font-size="11" text-anchor="{align}">{value}</text>"#,
            MARGIN_TOP + plot_h + 15.0
        )
        .unwrap();
    }
    writeln!(
        svg,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12" text-anchor="middle">l</text>"#,
        MARGIN_LEFT + plot_w / 2.0,
        HEIGHT - 10.0
    )
    .unwrap();
    writeln!(
        svg,
        r#"<text x="15" y="{}" font-family="sans-serif" font-size="12" text-anchor="middle">mu</text>"#,
        MARGIN_TOP + plot_h / 2.0
    )
    .unwrap();

    writeln!(
        svg,
        r#"<polyline id="hill" fill="none" stroke="black" stroke-width="1" points="{hill}"/>"#
    )
    .unwrap();
    writeln!(
        svg,
        r#"<polyline id="improved" fill="none" stroke="black" stroke-width="1.5" stroke-dasharray="1,3" points="{improved}"/>"#
    )
    .unwrap();
    let ye = sy(fig.expected_mu);
    writeln!(
        svg,
        r#"<polyline id="expected" fill="none" stroke="black" stroke-width="1" stroke-dasharray="8,4" points="{:.2},{ye:.2} {:.2},{ye:.2}"/>"#,
        MARGIN_LEFT,
        MARGIN_LEFT + plot_w
    )
    .unwrap();
    svg.push_str("</svg>\n");
    svg
}
