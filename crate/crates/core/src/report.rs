//! CSV and SVG output for sweeps.
//!
//! Numbers are written with 12 significant digits. The SVG plots the values
//! as they read back from the CSV text, so both files show identical data.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::sweep::{PointOutcome, SweepRow};

pub const CSV_HEADER: &str = "E,R,T,unitarity_residual,regime";

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("nothing to write: no rows or no solved points")]
    Empty,
    #[error("i/o failure on {path}: {source}")]
    IoFailure {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// Fixed 12-significant-digit scientific notation.
pub fn format_value(v: f64) -> String {
    format!("{v:.11e}")
}

fn rounded(v: f64) -> f64 {
    format_value(v).parse().expect("formatted float parses")
}

pub fn csv_string(rows: &[SweepRow]) -> Result<String, ReportError> {
    if rows.is_empty() {
        return Err(ReportError::Empty);
    }
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in rows {
        let e = format_value(row.energy);
        let _ = match &row.outcome {
            PointOutcome::Solved(p) => writeln!(
                out,
                "{e},{},{},{},{}",
                format_value(p.reflection),
                format_value(p.transmission),
                format_value(p.unitarity_residual),
                p.regime
            ),
            PointOutcome::Threshold => writeln!(out, "{e},,,,threshold"),
            PointOutcome::Failed(_) => writeln!(out, "{e},,,,failed"),
        };
    }
    Ok(out)
}

fn write_file(path: &Path, contents: &str) -> Result<(), ReportError> {
    fs::write(path, contents).map_err(|source| ReportError::IoFailure {
        path: path.display().to_string(),
        source,
    })
}

pub fn emit_csv(rows: &[SweepRow], path: &Path) -> Result<(), ReportError> {
    write_file(path, &csv_string(rows)?)
}

pub fn emit_svg(rows: &[SweepRow], path: &Path) -> Result<(), ReportError> {
    write_file(path, &svg_string(rows)?)
}

const WIDTH: f64 = 800.0;
const PANEL_HEIGHT: f64 = 300.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 30.0;
const MARGIN_BOTTOM: f64 = 45.0;

/// Data-to-pixel mapping of one panel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PanelFrame {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub left: f64,
    pub top: f64,
    pub width: f64,
    pub height: f64,
}

impl PanelFrame {
    pub fn px(&self, x: f64) -> f64 {
        self.left + (x - self.x_min) / (self.x_max - self.x_min) * self.width
    }

    pub fn py(&self, y: f64) -> f64 {
        self.top + (self.y_max - y) / (self.y_max - self.y_min) * self.height
    }
}

/// Pixel coordinates are written with three decimals.
pub fn format_coord(v: f64) -> String {
    format!("{v:.3}")
}

pub fn svg_string(rows: &[SweepRow]) -> Result<String, ReportError> {
    let data: Vec<(f64, f64, f64)> = rows
        .iter()
        .filter_map(|r| r.point())
        .map(|p| {
            (
                rounded(p.energy),
                rounded(p.reflection),
                rounded(p.transmission),
            )
        })
        .collect();
    if data.is_empty() {
        return Err(ReportError::Empty);
    }
    let (mut x_min, mut x_max) = data
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), d| {
            (lo.min(d.0), hi.max(d.0))
        });
    if x_max <= x_min {
        x_min -= 0.5;
        x_max += 0.5;
    }

    let mut svg = String::new();
    let height = 2.0 * PANEL_HEIGHT;
    let _ = writeln!(
        svg,
        r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#
    );
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{height}" viewBox="0 0 {WIDTH} {height}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(
        svg,
        r#"<rect x="0" y="0" width="{WIDTH}" height="{height}" fill="white"/>"#
    );
    let panels = [
        ("R", "reflection R", "#1f4e9c", 1usize),
        ("T", "transmission T", "#b23a2e", 2usize),
    ];
    for (k, (name, title, colour, column)) in panels.into_iter().enumerate() {
        let values: Vec<f64> = data
            .iter()
            .map(|d| if column == 1 { d.1 } else { d.2 })
            .collect();
        let (lo, hi) = values
            .iter()
            .fold((0.0f64, 1.0f64), |(lo, hi), &v| (lo.min(v), hi.max(v)));
        let pad = 0.05 * (hi - lo);
        let frame = PanelFrame {
            x_min,
            x_max,
            y_min: lo - pad,
            y_max: hi + pad,
            left: MARGIN_LEFT,
            top: k as f64 * PANEL_HEIGHT + MARGIN_TOP,
            width: WIDTH - MARGIN_LEFT - MARGIN_RIGHT,
            height: PANEL_HEIGHT - MARGIN_TOP - MARGIN_BOTTOM,
        };
        write_panel(
            &mut svg,
            name,
            title,
            colour,
            &frame,
            data.iter().map(|d| d.0).zip(values),
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

fn write_panel(
    svg: &mut String,
    name: &str,
    title: &str,
    colour: &str,
    f: &PanelFrame,
    points: impl Iterator<Item = (f64, f64)>,
) {
    let _ = writeln!(
        svg,
        r#"<g id="panel-{name}" data-xmin="{}" data-xmax="{}" data-ymin="{}" data-ymax="{}" data-left="{}" data-top="{}" data-width="{}" data-height="{}">"#,
        f.x_min, f.x_max, f.y_min, f.y_max, f.left, f.top, f.width, f.height
    );
    let (x0, x1) = (f.left, f.left + f.width);
    let (y0, y1) = (f.top, f.top + f.height);
    let _ = writeln!(
        svg,
        r#"<rect x="{x0}" y="{y0}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        f.width, f.height
    );
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" text-anchor="middle">{title}</text>"#,
        (x0 + x1) / 2.0,
        y0 - 10.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" text-anchor="middle">E</text>"#,
        (x0 + x1) / 2.0,
        y1 + 35.0
    );
    for level in [0.0, 1.0] {
        if level > f.y_min && level < f.y_max {
            let y = format_coord(f.py(level));
            let _ = writeln!(
                svg,
                r##"<line x1="{x0}" y1="{y}" x2="{x1}" y2="{y}" stroke="#999999" stroke-dasharray="4 3"/>"##
            );
        }
    }
    for i in 0..=5 {
        let t = i as f64 / 5.0;
        let xv = f.x_min + t * (f.x_max - f.x_min);
        let yv = f.y_min + t * (f.y_max - f.y_min);
        let xp = format_coord(f.px(xv));
        let yp = format_coord(f.py(yv));
        let _ = writeln!(
            svg,
            r#"<line x1="{xp}" y1="{y1}" x2="{xp}" y2="{}" stroke="black"/>"#,
            y1 + 5.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{xp}" y="{}" text-anchor="middle">{xv:.2}</text>"#,
            y1 + 18.0
        );
        let _ = writeln!(
            svg,
            r#"<line x1="{}" y1="{yp}" x2="{x0}" y2="{yp}" stroke="black"/>"#,
            x0 - 5.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{yp}" text-anchor="end" dominant-baseline="middle">{yv:.3}</text>"#,
            x0 - 8.0
        );
    }
    let coords: Vec<String> = points
        .map(|(x, y)| format!("{},{}", format_coord(f.px(x)), format_coord(f.py(y))))
        .collect();
    let _ = writeln!(
        svg,
        r#"<polyline fill="none" stroke="{colour}" stroke-width="1.5" points="{}"/>"#,
        coords.join(" ")
    );
    svg.push_str("</g>\n");
}
