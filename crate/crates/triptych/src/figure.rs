//! Deterministic SVG rendering of the diagnostic displays.
//!
//! Figures are emitted as plain SVG text with fixed coordinate formatting:
//! the same models and options always produce byte-identical output. No
//! plotting dependency is involved. The triptych arranges its three panels
//! in the fixed order Murphy curve, reliability diagram, ROC curve.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::decomp::McbDscPlot;
use crate::murphy::MurphyGeometry;
use crate::reliability::ReliabilityDiagram;
use crate::roc::RocCurve;

/// Which display a figure shows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FigureKind {
    Murphy,
    Reliability,
    Roc,
    Triptych,
    McbDsc,
}

/// Name and stroke color of one plotted series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesStyle {
    pub name: String,
    pub color: String,
}

/// Figure-level options: kind, per-series styles, and axis ranges.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FigureSpec {
    pub kind: FigureKind,
    pub series: Vec<SeriesStyle>,
    /// Forced x range; defaults to `[0, 1]` (or data-driven for MCB-DSC).
    pub x_range: Option<(f64, f64)>,
    /// Forced y range; defaults to data-driven where sensible.
    pub y_range: Option<(f64, f64)>,
}

const PALETTE: [&str; 8] = [
    "#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d", "#666666",
];

impl FigureSpec {
    /// Spec with palette colors assigned to the named series in order.
    pub fn with_palette(kind: FigureKind, names: &[String]) -> Self {
        let series = names
            .iter()
            .enumerate()
            .map(|(i, name)| SeriesStyle {
                name: name.clone(),
                color: PALETTE[i % PALETTE.len()].to_string(),
            })
            .collect();
        FigureSpec {
            kind,
            series,
            x_range: None,
            y_range: None,
        }
    }

    fn color(&self, idx: usize) -> &str {
        self.series
            .get(idx)
            .map(|s| s.color.as_str())
            .unwrap_or(PALETTE[idx % PALETTE.len()])
    }
}

fn fmt2(v: f64) -> String {
    format!("{v:.2}")
}

/// Tick label: up to three decimals, trailing zeros trimmed.
fn tick_label(v: f64) -> String {
    let s = format!("{v:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s.is_empty() || s == "-" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

/// One axis-aligned drawing area with data-space mapping.
struct Panel {
    left: f64,
    top: f64,
    width: f64,
    height: f64,
    x_range: (f64, f64),
    y_range: (f64, f64),
}

impl Panel {
    fn x(&self, v: f64) -> f64 {
        let (lo, hi) = self.x_range;
        self.left + (v - lo) / (hi - lo) * self.width
    }

    fn y(&self, v: f64) -> f64 {
        let (lo, hi) = self.y_range;
        self.top + self.height - (v - lo) / (hi - lo) * self.height
    }

    fn polyline(&self, points: &[(f64, f64)], color: &str, width: f64, dashed: bool) -> String {
        let coords: Vec<String> = points
            .iter()
            .map(|&(x, y)| format!("{},{}", fmt2(self.x(x)), fmt2(self.y(y))))
            .collect();
        let dash = if dashed { " stroke-dasharray=\"4 3\"" } else { "" };
        format!(
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\"{} />\n",
            coords.join(" "),
            color,
            width,
            dash
        )
    }

    fn frame_and_axes(
        &self,
        out: &mut String,
        title: &str,
        x_label: &str,
        y_label: &str,
        x_ticks: &[f64],
        y_ticks: &[f64],
    ) {
        let _ = writeln!(
            out,
            "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"white\" stroke=\"#333333\" stroke-width=\"1\" />",
            fmt2(self.left),
            fmt2(self.top),
            fmt2(self.width),
            fmt2(self.height)
        );
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-size=\"13\" font-weight=\"bold\">{}</text>",
            fmt2(self.left + self.width / 2.0),
            fmt2(self.top - 8.0),
            title
        );
        for &t in x_ticks {
            let px = self.x(t);
            let _ = writeln!(
                out,
                "<line x1=\"{x}\" y1=\"{y0}\" x2=\"{x}\" y2=\"{y1}\" stroke=\"#333333\" stroke-width=\"1\" />",
                x = fmt2(px),
                y0 = fmt2(self.top + self.height),
                y1 = fmt2(self.top + self.height + 4.0)
            );
            let _ = writeln!(
                out,
                "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-size=\"10\">{}</text>",
                fmt2(px),
                fmt2(self.top + self.height + 15.0),
                tick_label(t)
            );
        }
        for &t in y_ticks {
            let py = self.y(t);
            let _ = writeln!(
                out,
                "<line x1=\"{x0}\" y1=\"{y}\" x2=\"{x1}\" y2=\"{y}\" stroke=\"#333333\" stroke-width=\"1\" />",
                x0 = fmt2(self.left - 4.0),
                x1 = fmt2(self.left),
                y = fmt2(py)
            );
            let _ = writeln!(
                out,
                "<text x=\"{}\" y=\"{}\" text-anchor=\"end\" font-size=\"10\">{}</text>",
                fmt2(self.left - 7.0),
                fmt2(py + 3.0),
                tick_label(t)
            );
        }
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-size=\"11\">{}</text>",
            fmt2(self.left + self.width / 2.0),
            fmt2(self.top + self.height + 30.0),
            x_label
        );
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-size=\"11\" transform=\"rotate(-90 {} {})\">{}</text>",
            fmt2(self.left - 34.0),
            fmt2(self.top + self.height / 2.0),
            fmt2(self.left - 34.0),
            fmt2(self.top + self.height / 2.0),
            y_label
        );
    }
}

fn unit_ticks() -> Vec<f64> {
    vec![0.0, 0.25, 0.5, 0.75, 1.0]
}

fn nice_upper(v: f64) -> f64 {
    if v <= 0.0 {
        return 0.1;
    }
    let step = 0.05;
    (v / step).ceil() * step
}

fn svg_open(width: f64, height: f64) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {} {}\" font-family=\"sans-serif\">\n<rect width=\"{}\" height=\"{}\" fill=\"white\" />\n",
        fmt2(width),
        fmt2(height),
        fmt2(width),
        fmt2(height)
    )
}

fn legend(out: &mut String, spec: &FigureSpec, left: f64, top: f64) {
    let mut x = left;
    for (idx, series) in spec.series.iter().enumerate() {
        let color = spec.color(idx);
        let _ = writeln!(
            out,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"2\" />",
            fmt2(x),
            fmt2(top),
            fmt2(x + 18.0),
            fmt2(top),
            color
        );
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" font-size=\"11\">{}</text>",
            fmt2(x + 22.0),
            fmt2(top + 4.0),
            series.name
        );
        x += 30.0 + 7.0 * series.name.len() as f64;
    }
}

/// Knot markers are drawn only where the tie penalty makes the knot value
/// visibly differ from both one-sided limits.
fn murphy_markers(geometry: &MurphyGeometry) -> Vec<(f64, f64)> {
    let mut markers = Vec::new();
    let interior = &geometry.knots[1..geometry.knots.len() - 1];
    for (idx, (&knot, &value)) in interior.iter().zip(&geometry.knot_values).enumerate() {
        let left = &geometry.segments[idx];
        let right = &geometry.segments[idx + 1];
        let from_left = left.a + left.b * knot;
        let from_right = right.a + right.b * knot;
        if (value - from_left).abs() > 1e-12 && (value - from_right).abs() > 1e-12 {
            markers.push((knot, value));
        }
    }
    markers
}

fn draw_murphy_panel(
    out: &mut String,
    panel: &Panel,
    series: &[(String, MurphyGeometry)],
    spec: &FigureSpec,
) {
    for (idx, (_, geometry)) in series.iter().enumerate() {
        let color = spec.color(idx);
        let mut points = Vec::new();
        for segment in &geometry.segments {
            points.push((segment.lo, segment.a + segment.b * segment.lo));
            points.push((segment.hi, segment.a + segment.b * segment.hi));
        }
        out.push_str(&panel.polyline(&points, color, 1.6, false));
        for (x, y) in murphy_markers(geometry) {
            let _ = writeln!(
                out,
                "<circle cx=\"{}\" cy=\"{}\" r=\"2.2\" fill=\"{}\" />",
                fmt2(panel.x(x)),
                fmt2(panel.y(y)),
                color
            );
        }
    }
}

fn murphy_y_range(series: &[(String, MurphyGeometry)]) -> (f64, f64) {
    let mut top: f64 = 0.0;
    for (_, geometry) in series {
        for segment in &geometry.segments {
            top = top.max(segment.a + segment.b * segment.lo);
            top = top.max(segment.a + segment.b * segment.hi);
        }
        for &v in &geometry.knot_values {
            top = top.max(v);
        }
    }
    (0.0, nice_upper(top * 1.05))
}

/// Standalone Murphy diagram for one or more forecasters.
pub fn murphy_svg(series: &[(String, MurphyGeometry)], spec: &FigureSpec) -> String {
    let (width, height) = (430.0, 400.0);
    let mut out = svg_open(width, height);
    let panel = Panel {
        left: 60.0,
        top: 40.0,
        width: 330.0,
        height: 290.0,
        x_range: spec.x_range.unwrap_or((0.0, 1.0)),
        y_range: spec.y_range.unwrap_or_else(|| murphy_y_range(series)),
    };
    let y_ticks: Vec<f64> = (0..=4)
        .map(|k| panel.y_range.0 + (panel.y_range.1 - panel.y_range.0) * k as f64 / 4.0)
        .collect();
    panel.frame_and_axes(
        &mut out,
        "Murphy curve",
        "threshold",
        "mean elementary score",
        &unit_ticks(),
        &y_ticks,
    );
    draw_murphy_panel(&mut out, &panel, series, spec);
    legend(&mut out, spec, 60.0, height - 18.0);
    out.push_str("</svg>\n");
    out
}

fn draw_reliability_panel(
    out: &mut String,
    panel: &Panel,
    diagram: &ReliabilityDiagram,
    color: &str,
    with_extras: bool,
) {
    // Diagonal reference.
    let (lo, hi) = panel.x_range;
    out.push_str(&panel.polyline(&[(lo, lo), (hi, hi)], "#999999", 1.0, true));

    if with_extras {
        if let Some(band) = &diagram.band {
            if band.forecasts.len() > 1 {
                let mut ring: Vec<(f64, f64)> = band
                    .forecasts
                    .iter()
                    .zip(&band.lower)
                    .map(|(&x, &y)| (x, y))
                    .collect();
                ring.extend(
                    band.forecasts
                        .iter()
                        .zip(&band.upper)
                        .rev()
                        .map(|(&x, &y)| (x, y)),
                );
                let coords: Vec<String> = ring
                    .iter()
                    .map(|&(x, y)| format!("{},{}", fmt2(panel.x(x)), fmt2(panel.y(y))))
                    .collect();
                let _ = writeln!(
                    out,
                    "<polygon points=\"{}\" fill=\"#c6dbef\" fill-opacity=\"0.6\" stroke=\"none\" />",
                    coords.join(" ")
                );
            } else if band.forecasts.len() == 1 {
                let x = panel.x(band.forecasts[0]);
                let _ = writeln!(
                    out,
                    "<line x1=\"{x}\" y1=\"{}\" x2=\"{x}\" y2=\"{}\" stroke=\"#c6dbef\" stroke-width=\"4\" />",
                    fmt2(panel.y(band.upper[0])),
                    fmt2(panel.y(band.lower[0])),
                    x = fmt2(x)
                );
            }
        }
        // Histogram strip along the bottom sixth of the panel.
        let max_count = diagram.histogram.iter().copied().max().unwrap_or(0);
        if max_count > 0 {
            let bins = diagram.histogram.len();
            let strip = panel.height / 6.0;
            for (idx, &count) in diagram.histogram.iter().enumerate() {
                if count == 0 {
                    continue;
                }
                let x0 = idx as f64 / bins as f64;
                let x1 = (idx + 1) as f64 / bins as f64;
                if x1 < panel.x_range.0 || x0 > panel.x_range.1 {
                    continue;
                }
                let bar = strip * count as f64 / max_count as f64;
                let _ = writeln!(
                    out,
                    "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"#bbbbbb\" fill-opacity=\"0.7\" />",
                    fmt2(panel.x(x0.max(panel.x_range.0))),
                    fmt2(panel.top + panel.height - bar),
                    fmt2(panel.x(x1.min(panel.x_range.1)) - panel.x(x0.max(panel.x_range.0))),
                    fmt2(bar)
                );
            }
        }
    }

    if diagram.curve_points.len() == 1 {
        let (x, y) = diagram.curve_points[0];
        let _ = writeln!(
            out,
            "<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"{}\" />",
            fmt2(panel.x(x)),
            fmt2(panel.y(y)),
            color
        );
    } else {
        out.push_str(&panel.polyline(&diagram.curve_points, color, 1.6, false));
    }
}

/// Smallest contiguous interval containing the forecast support, padded.
fn support_range(diagram: &ReliabilityDiagram) -> (f64, f64) {
    let lo = diagram.curve_points.first().map(|p| p.0).unwrap_or(0.0);
    let hi = diagram.curve_points.last().map(|p| p.0).unwrap_or(1.0);
    if hi > lo {
        (lo, hi)
    } else {
        ((lo - 0.05).max(0.0), (hi + 0.05).min(1.0))
    }
}

/// Reliability diagrams, one panel per forecaster (bands and histograms
/// included per panel).
pub fn reliability_svg(
    diagrams: &[(String, ReliabilityDiagram)],
    spec: &FigureSpec,
    restrict_to_support: bool,
) -> String {
    let panel_width = 330.0;
    let spacing = 100.0;
    let count = diagrams.len().max(1) as f64;
    let width = 60.0 + count * (panel_width + spacing) - spacing + 40.0;
    let height = 400.0;
    let mut out = svg_open(width, height);
    for (idx, (name, diagram)) in diagrams.iter().enumerate() {
        let range = if restrict_to_support {
            support_range(diagram)
        } else {
            spec.x_range.unwrap_or((0.0, 1.0))
        };
        let panel = Panel {
            left: 60.0 + idx as f64 * (panel_width + spacing),
            top: 40.0,
            width: panel_width,
            height: 290.0,
            x_range: range,
            y_range: (0.0, 1.0),
        };
        let x_ticks: Vec<f64> = (0..=4)
            .map(|k| range.0 + (range.1 - range.0) * k as f64 / 4.0)
            .collect();
        panel.frame_and_axes(
            &mut out,
            name,
            "forecast value",
            "conditional event probability",
            &x_ticks,
            &unit_ticks(),
        );
        draw_reliability_panel(&mut out, &panel, diagram, spec.color(idx), true);
    }
    out.push_str("</svg>\n");
    out
}

fn draw_roc_panel(
    out: &mut String,
    panel: &Panel,
    curves: &[(String, RocCurve)],
    spec: &FigureSpec,
) {
    out.push_str(&panel.polyline(&[(0.0, 0.0), (1.0, 1.0)], "#999999", 1.0, true));
    for (idx, (_, curve)) in curves.iter().enumerate() {
        out.push_str(&panel.polyline(
            &curve.vertex_coordinates(),
            spec.color(idx),
            1.6,
            false,
        ));
    }
}

/// Standalone ROC display for one or more forecasters.
pub fn roc_svg(curves: &[(String, RocCurve)], spec: &FigureSpec) -> String {
    let (width, height) = (430.0, 400.0);
    let mut out = svg_open(width, height);
    let panel = Panel {
        left: 60.0,
        top: 40.0,
        width: 330.0,
        height: 290.0,
        x_range: (0.0, 1.0),
        y_range: (0.0, 1.0),
    };
    let concave = curves.iter().any(|(_, c)| c.concave);
    let title = if concave { "ROC curve (concave)" } else { "ROC curve" };
    panel.frame_and_axes(
        &mut out,
        title,
        "false alarm rate",
        "hit rate",
        &unit_ticks(),
        &unit_ticks(),
    );
    draw_roc_panel(&mut out, &panel, curves, spec);
    legend(&mut out, spec, 60.0, height - 18.0);
    out.push_str("</svg>\n");
    out
}

/// The triptych: Murphy curve, reliability diagram, and ROC curve in three
/// aligned panels, sharing one legend.
pub fn triptych_svg(
    murphy: &[(String, MurphyGeometry)],
    reliability: &[(String, ReliabilityDiagram)],
    roc: &[(String, RocCurve)],
    spec: &FigureSpec,
    restrict_to_support: bool,
) -> String {
    let panel_width = 300.0;
    let spacing = 95.0;
    let width = 60.0 + 3.0 * (panel_width + spacing) - spacing + 30.0;
    let height = 420.0;
    let mut out = svg_open(width, height);

    let make_panel = |idx: usize, x_range: (f64, f64), y_range: (f64, f64)| Panel {
        left: 60.0 + idx as f64 * (panel_width + spacing),
        top: 45.0,
        width: panel_width,
        height: 290.0,
        x_range,
        y_range,
    };

    // Panel 1: Murphy.
    let murphy_panel = make_panel(0, (0.0, 1.0), murphy_y_range(murphy));
    let y_ticks: Vec<f64> = (0..=4)
        .map(|k| murphy_panel.y_range.1 * k as f64 / 4.0)
        .collect();
    murphy_panel.frame_and_axes(
        &mut out,
        "Murphy curve",
        "threshold",
        "mean elementary score",
        &unit_ticks(),
        &y_ticks,
    );
    draw_murphy_panel(&mut out, &murphy_panel, murphy, spec);

    // Panel 2: reliability. Curves overlaid; bands and histograms only
    // when a single forecaster is shown.
    let range = if restrict_to_support {
        let (mut lo, mut hi) = (1.0f64, 0.0f64);
        for (_, diagram) in reliability {
            let (a, b) = support_range(diagram);
            lo = lo.min(a);
            hi = hi.max(b);
        }
        if hi > lo {
            (lo, hi)
        } else {
            (0.0, 1.0)
        }
    } else {
        (0.0, 1.0)
    };
    let reliability_panel = make_panel(1, range, (0.0, 1.0));
    let x_ticks: Vec<f64> = (0..=4)
        .map(|k| range.0 + (range.1 - range.0) * k as f64 / 4.0)
        .collect();
    reliability_panel.frame_and_axes(
        &mut out,
        "Reliability diagram",
        "forecast value",
        "conditional event probability",
        &x_ticks,
        &unit_ticks(),
    );
    let single = reliability.len() == 1;
    for (idx, (_, diagram)) in reliability.iter().enumerate() {
        draw_reliability_panel(&mut out, &reliability_panel, diagram, spec.color(idx), single);
    }

    // Panel 3: ROC.
    let roc_panel = make_panel(2, (0.0, 1.0), (0.0, 1.0));
    let concave = roc.iter().any(|(_, c)| c.concave);
    roc_panel.frame_and_axes(
        &mut out,
        if concave { "ROC curve (concave)" } else { "ROC curve" },
        "false alarm rate",
        "hit rate",
        &unit_ticks(),
        &unit_ticks(),
    );
    draw_roc_panel(&mut out, &roc_panel, roc, spec);

    legend(&mut out, spec, 60.0, height - 20.0);
    out.push_str("</svg>\n");
    out
}

/// MCB-DSC scatter with iso-score contours and the baseline diagonal.
pub fn mcbdsc_svg(plot: &McbDscPlot, spec: &FigureSpec) -> String {
    let (width, height) = (560.0, 470.0);
    let mut out = svg_open(width, height);

    // Data-driven ranges over the finite points, origin included.
    let finite: Vec<(f64, f64)> = plot
        .points
        .iter()
        .filter_map(|p| p.mcb.finite().map(|m| (m, p.dsc)))
        .collect();
    let max_mcb = finite.iter().map(|p| p.0).fold(0.0f64, f64::max);
    let max_dsc = finite.iter().map(|p| p.1).fold(0.0f64, f64::max);
    let has_margin = plot.points.iter().any(|p| p.margin);
    let x_hi = (max_mcb * 1.15).max(0.02);
    let y_hi = (max_dsc * 1.15).max(0.02);

    let panel = Panel {
        left: 70.0,
        top: 45.0,
        width: if has_margin { 380.0 } else { 430.0 },
        height: 340.0,
        x_range: spec.x_range.unwrap_or((0.0, x_hi)),
        y_range: spec.y_range.unwrap_or((0.0, y_hi)),
    };
    let x_ticks: Vec<f64> = (0..=4).map(|k| panel.x_range.1 * k as f64 / 4.0).collect();
    let y_ticks: Vec<f64> = (0..=4).map(|k| panel.y_range.1 * k as f64 / 4.0).collect();
    panel.frame_and_axes(
        &mut out,
        &format!("MCB-DSC plot ({})", plot.rule),
        "miscalibration (MCB)",
        "discrimination (DSC)",
        &x_ticks,
        &y_ticks,
    );

    // Clip region for lines that may leave the panel.
    let _ = write!(
        out,
        "<clipPath id=\"panel\"><rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" /></clipPath>\n<g clip-path=\"url(#panel)\">\n",
        fmt2(panel.left),
        fmt2(panel.top),
        fmt2(panel.width),
        fmt2(panel.height)
    );
    // Iso-score contours: mean = mcb - dsc + unc, slope one.
    for &level in &plot.contour_levels {
        let offset = plot.unc - level;
        let span = panel.x_range.1.max(panel.y_range.1) + offset.abs() + 1.0;
        out.push_str(&panel.polyline(
            &[(-span, -span + offset), (span, span + offset)],
            "#cccccc",
            0.8,
            false,
        ));
    }
    // Baseline diagonal: the mean score of the best constant forecast.
    let span = panel.x_range.1.max(panel.y_range.1) + 1.0;
    out.push_str(&panel.polyline(&[(-span, -span), (span, span)], "#2ca02c", 2.2, false));
    out.push_str("</g>\n");

    let _ = writeln!(
        out,
        "<text x=\"{}\" y=\"{}\" font-size=\"10\" fill=\"#2ca02c\">UNC = {}</text>",
        fmt2(panel.left + panel.width - 80.0),
        fmt2(panel.top + 14.0),
        tick_label(plot.unc)
    );
    // Best constant forecast at the origin.
    let _ = writeln!(
        out,
        "<rect x=\"{}\" y=\"{}\" width=\"7\" height=\"7\" fill=\"#2ca02c\" />",
        fmt2(panel.x(0.0) - 3.5),
        fmt2(panel.y(0.0) - 3.5)
    );

    let margin_x = panel.left + panel.width + 26.0;
    if has_margin {
        let _ = writeln!(
            out,
            "<line x1=\"{x}\" y1=\"{}\" x2=\"{x}\" y2=\"{}\" stroke=\"#999999\" stroke-width=\"1\" stroke-dasharray=\"2 3\" />",
            fmt2(panel.top),
            fmt2(panel.top + panel.height),
            x = fmt2(margin_x)
        );
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-size=\"10\">inf</text>",
            fmt2(margin_x),
            fmt2(panel.top + panel.height + 15.0)
        );
    }

    for (idx, point) in plot.points.iter().enumerate() {
        let color = PALETTE[idx % PALETTE.len()];
        let (px, py) = match point.mcb.finite() {
            Some(m) => (panel.x(m), panel.y(point.dsc)),
            None => (margin_x, panel.y(point.dsc)),
        };
        let _ = writeln!(
            out,
            "<circle cx=\"{}\" cy=\"{}\" r=\"3.2\" fill=\"{}\" />",
            fmt2(px),
            fmt2(py),
            color
        );
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" font-size=\"9\">{}</text>",
            fmt2(px + 5.0),
            fmt2(py - 4.0),
            point.name
        );
    }

    out.push_str("</svg>\n");
    out
}
