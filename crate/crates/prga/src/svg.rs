//! Minimal hand-rolled SVG chart writer. No external assets, fixed 800x600
//! viewport, byte output a pure function of the input cells.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::harness::{SweepCell, SweepMode};

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 770.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 540.0;

const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];

struct Series {
    label: String,
    color: &'static str,
    empirical: Vec<(f64, f64)>,
    bound: Vec<(f64, f64)>,
}

/// One series per distinct group key (alpha for mu-sweeps, mu for
/// alpha-sweeps), in first-appearance order so the output is deterministic.
fn collect_series(cells: &[SweepCell]) -> Vec<Series> {
    let mut series: Vec<(u64, Series)> = Vec::new();
    for cell in cells {
        let (key, x, label) = match cell.mode {
            SweepMode::Mu => (cell.alpha, cell.mu, format!("alpha={}", cell.alpha)),
            SweepMode::Alpha => (cell.mu, cell.alpha, format!("mu={}", cell.mu)),
        };
        let empirical_y = match cell.mode {
            SweepMode::Mu => cell.min_residual,
            SweepMode::Alpha => cell.final_residual,
        };
        let bits = key.to_bits();
        let entry = match series.iter_mut().find(|(k, _)| *k == bits) {
            Some((_, s)) => s,
            None => {
                let color = PALETTE[series.len() % PALETTE.len()];
                series.push((
                    bits,
                    Series {
                        label,
                        color,
                        empirical: Vec::new(),
                        bound: Vec::new(),
                    },
                ));
                &mut series.last_mut().expect("just pushed").1
            }
        };
        entry.empirical.push((x, empirical_y));
        if let Some(bound) = cell.lower_bound {
            entry.bound.push((x, bound));
        }
    }
    series.into_iter().map(|(_, s)| s).collect()
}

fn px(x: f64, x_min: f64, x_max: f64) -> f64 {
    if x_max > x_min {
        LEFT + (x - x_min) / (x_max - x_min) * (RIGHT - LEFT)
    } else {
        (LEFT + RIGHT) / 2.0
    }
}

fn py(y: f64, y_max: f64) -> f64 {
    BOTTOM - y / y_max * (BOTTOM - TOP)
}

fn polyline(out: &mut String, points: &[(f64, f64)], x_min: f64, x_max: f64, y_max: f64, color: &str, dashed: bool) {
    if points.is_empty() {
        return;
    }
    out.push_str("  <polyline fill=\"none\" stroke=\"");
    out.push_str(color);
    out.push_str("\" stroke-width=\"2\"");
    if dashed {
        out.push_str(" stroke-dasharray=\"6 4\"");
    }
    out.push_str(" points=\"");
    for (i, &(x, y)) in points.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{:.2},{:.2}", px(x, x_min, x_max), py(y, y_max));
    }
    out.push_str("\"/>\n");
}

fn tick_label(value: f64) -> String {
    format!("{value:.3}")
}

/// Renders the chart: solid empirical polylines, dashed bound polylines,
/// axes with ticks, and a legend.
pub(crate) fn svg_string(cells: &[SweepCell]) -> Result<String> {
    if cells.is_empty() {
        return Err(Error::InvalidGrid {
            reason: "no cells to render".into(),
        });
    }
    let series = collect_series(cells);

    let xs = series
        .iter()
        .flat_map(|s| s.empirical.iter().map(|&(x, _)| x));
    let x_min = xs.clone().fold(f64::INFINITY, f64::min);
    let x_max = xs.fold(f64::NEG_INFINITY, f64::max);
    let y_data_max = series
        .iter()
        .flat_map(|s| {
            s.empirical
                .iter()
                .map(|&(_, y)| y)
                .chain(s.bound.iter().map(|&(_, y)| y))
        })
        .fold(0.0f64, f64::max);
    let y_max = if y_data_max > 0.0 {
        y_data_max * 1.05
    } else {
        1.0
    };

    let x_label = match cells[0].mode {
        SweepMode::Mu => "mu",
        SweepMode::Alpha => "alpha",
    };

    let mut out = String::new();
    out.push_str(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         width=\"800\" height=\"600\" viewBox=\"0 0 800 600\">\n",
    );
    let _ = writeln!(
        out,
        "  <rect x=\"0\" y=\"0\" width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"#ffffff\"/>"
    );

    // Axes.
    let _ = writeln!(
        out,
        "  <line x1=\"{LEFT}\" y1=\"{BOTTOM}\" x2=\"{RIGHT}\" y2=\"{BOTTOM}\" stroke=\"#000000\" stroke-width=\"1\"/>"
    );
    let _ = writeln!(
        out,
        "  <line x1=\"{LEFT}\" y1=\"{TOP}\" x2=\"{LEFT}\" y2=\"{BOTTOM}\" stroke=\"#000000\" stroke-width=\"1\"/>"
    );

    // Ticks: five per axis.
    for i in 0..=4 {
        let t = i as f64 / 4.0;
        let x_value = x_min + t * (x_max - x_min);
        let x_pixel = px(x_value, x_min, x_max);
        let _ = writeln!(
            out,
            "  <line x1=\"{x_pixel:.2}\" y1=\"{BOTTOM}\" x2=\"{x_pixel:.2}\" y2=\"{}\" stroke=\"#000000\" stroke-width=\"1\"/>",
            BOTTOM + 5.0
        );
        let _ = writeln!(
            out,
            "  <text x=\"{x_pixel:.2}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">{}</text>",
            BOTTOM + 20.0,
            tick_label(x_value)
        );

        let y_value = t * y_max;
        let y_pixel = py(y_value, y_max);
        let _ = writeln!(
            out,
            "  <line x1=\"{}\" y1=\"{y_pixel:.2}\" x2=\"{LEFT}\" y2=\"{y_pixel:.2}\" stroke=\"#000000\" stroke-width=\"1\"/>",
            LEFT - 5.0
        );
        let _ = writeln!(
            out,
            "  <text x=\"{}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">{}</text>",
            LEFT - 8.0,
            y_pixel + 4.0,
            tick_label(y_value)
        );
    }

    // Axis labels.
    let _ = writeln!(
        out,
        "  <text x=\"{:.2}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">{x_label}</text>",
        (LEFT + RIGHT) / 2.0,
        BOTTOM + 45.0
    );
    let _ = writeln!(
        out,
        "  <text x=\"20\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 20 {:.2})\">residual norm</text>",
        (TOP + BOTTOM) / 2.0,
        (TOP + BOTTOM) / 2.0
    );

    // Series: solid empirical, dashed bound.
    for s in &series {
        polyline(&mut out, &s.empirical, x_min, x_max, y_max, s.color, false);
        polyline(&mut out, &s.bound, x_min, x_max, y_max, s.color, true);
    }

    // Legend, top right. Solid lines are empirical, dashed their bounds.
    let mut legend_y = TOP + 16.0;
    for s in &series {
        let _ = writeln!(
            out,
            "  <line x1=\"{}\" y1=\"{legend_y:.2}\" x2=\"{}\" y2=\"{legend_y:.2}\" stroke=\"{}\" stroke-width=\"2\"/>",
            RIGHT - 160.0,
            RIGHT - 130.0,
            s.color
        );
        let _ = writeln!(
            out,
            "  <text x=\"{}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"12\">{}</text>",
            RIGHT - 122.0,
            legend_y + 4.0,
            s.label
        );
        legend_y += 18.0;
    }
    let _ = writeln!(
        out,
        "  <text x=\"{}\" y=\"{legend_y:.2}\" font-family=\"sans-serif\" font-size=\"12\">dashed: lower bound</text>",
        RIGHT - 160.0
    );

    out.push_str("</svg>\n");
    Ok(out)
}
