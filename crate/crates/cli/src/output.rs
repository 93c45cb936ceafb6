//! Deterministic artifact emission: one fixed numeric policy, '\n' line
//! endings, atomic file replacement.

use std::ffi::OsString;
use std::fs;
use std::io;
use std::path::Path;

/// Every emitted value goes through this: 12 significant digits, scientific
/// notation, locale-independent. Parsing the result back recovers the input
/// to ~5e-12 relative, well inside the 1e-9 round-trip contract.
pub fn sig12(x: f64) -> String {
    format!("{x:.11e}")
}

/// RFC-4180-style CSV field: quoted only when the content demands it
/// (marker labels contain commas).
pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

/// Write through a sibling temp file and rename, so a reader never observes
/// a partially written artifact.
pub fn write_atomic(path: &Path, contents: &str) -> io::Result<()> {
    let mut tmp_name = path.file_name().map(OsString::from).unwrap_or_default();
    tmp_name.push(".tmp");
    let tmp = path.with_file_name(tmp_name);
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)
}

pub struct Series<'a> {
    pub x: &'a [f64],
    pub y: &'a [f64],
    pub x_label: &'a str,
    pub y_label: &'a str,
}

fn bounds(values: &[f64]) -> (f64, f64) {
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if lo.is_finite() && hi.is_finite() {
        (lo, hi)
    } else {
        (0.0, 1.0)
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Minimal line plot: two axis lines, axis labels with the data ranges, and
/// a single polyline. A convenience rendering — the CSV carries the data.
pub fn svg_line_plot(series: &Series) -> String {
    const W: f64 = 800.0;
    const H: f64 = 500.0;
    const LEFT: f64 = 80.0;
    const RIGHT: f64 = 20.0;
    const TOP: f64 = 20.0;
    const BOTTOM: f64 = 60.0;

    let (x_lo, x_hi) = bounds(series.x);
    let (y_lo, y_hi) = bounds(series.y);
    let x_span = if x_hi > x_lo { x_hi - x_lo } else { 1.0 };
    let y_span = if y_hi > y_lo { y_hi - y_lo } else { 1.0 };
    let px = |x: f64| LEFT + (x - x_lo) / x_span * (W - LEFT - RIGHT);
    let py = |y: f64| H - BOTTOM - (y - y_lo) / y_span * (H - TOP - BOTTOM);

    let mut points = String::new();
    for (x, y) in series.x.iter().zip(series.y) {
        if !points.is_empty() {
            points.push(' ');
        }
        points.push_str(&sig12(px(*x)));
        points.push(',');
        points.push_str(&sig12(py(*y)));
    }

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\">\n"
    ));
    svg.push_str(&format!(
        "<line x1=\"{LEFT}\" y1=\"{TOP}\" x2=\"{LEFT}\" y2=\"{}\" stroke=\"black\"/>\n",
        H - BOTTOM
    ));
    svg.push_str(&format!(
        "<line x1=\"{LEFT}\" y1=\"{0}\" x2=\"{1}\" y2=\"{0}\" stroke=\"black\"/>\n",
        H - BOTTOM,
        W - RIGHT
    ));
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{} [{} .. {}]</text>\n",
        (LEFT + W - RIGHT) / 2.0,
        H - 18.0,
        xml_escape(series.x_label),
        sig12(x_lo),
        sig12(x_hi)
    ));
    svg.push_str(&format!(
        "<text x=\"{0}\" y=\"{1}\" text-anchor=\"middle\" transform=\"rotate(-90 {0} {1})\">{2} [{3} .. {4}]</text>\n",
        22.0,
        (TOP + H - BOTTOM) / 2.0,
        xml_escape(series.y_label),
        sig12(y_lo),
        sig12(y_hi)
    ));
    svg.push_str(&format!(
        "<polyline fill=\"none\" stroke=\"black\" points=\"{points}\"/>\n"
    ));
    svg.push_str("</svg>\n");
    svg
}
