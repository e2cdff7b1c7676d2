//! Orthographic SVG rendering of 3-D polylines.
//!
//! The view direction is given by azimuth (about `z`, from `x`) and
//! elevation (from the `xy` plane). Both screen axes share one scale so
//! shapes are not distorted. Output depends only on the inputs.

use std::fmt::Write;

use smarandache_core::Vec3;

use crate::args::View;

pub const WIDTH: f64 = 800.0;
pub const HEIGHT: f64 = 600.0;

const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 30.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 50.0;
const TICK: f64 = 5.0;
const COLORS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

/// Screen axes `(right, up)` for a view.
pub fn screen_axes(view: View) -> (Vec3, Vec3) {
    let (sa, ca) = view.azimuth.to_radians().sin_cos();
    let (se, ce) = view.elevation.to_radians().sin_cos();
    (Vec3::new(-sa, ca, 0.0), Vec3::new(-se * ca, -se * sa, ce))
}

pub fn project(p: &Vec3, axes: &(Vec3, Vec3)) -> (f64, f64) {
    (p.dot(&axes.0), p.dot(&axes.1))
}

/// Maps projected coordinates into the plot area.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    pub scale: f64,
    pub cu: f64,
    pub cv: f64,
}

impl Frame {
    fn fit(lo: (f64, f64), hi: (f64, f64)) -> Self {
        let w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
        let h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
        let du = (hi.0 - lo.0).max(1e-12);
        let dv = (hi.1 - lo.1).max(1e-12);
        Frame { scale: (w / du).min(h / dv), cu: 0.5 * (lo.0 + hi.0), cv: 0.5 * (lo.1 + hi.1) }
    }

    pub fn place(self, u: f64, v: f64) -> (f64, f64) {
        let x0 = MARGIN_LEFT + 0.5 * (WIDTH - MARGIN_LEFT - MARGIN_RIGHT);
        let y0 = MARGIN_TOP + 0.5 * (HEIGHT - MARGIN_TOP - MARGIN_BOTTOM);
        (x0 + (u - self.cu) * self.scale, y0 - (v - self.cv) * self.scale)
    }

    fn locate(self, x: f64, y: f64) -> (f64, f64) {
        let x0 = MARGIN_LEFT + 0.5 * (WIDTH - MARGIN_LEFT - MARGIN_RIGHT);
        let y0 = MARGIN_TOP + 0.5 * (HEIGHT - MARGIN_TOP - MARGIN_BOTTOM);
        ((x - x0) / self.scale + self.cu, (y0 - y) / self.scale + self.cv)
    }
}

/// Multiples of a 1-2-5 step covering `[lo, hi]`, about `target` of them.
fn ticks(lo: f64, hi: f64, target: usize) -> (Vec<f64>, f64) {
    let span = (hi - lo).max(1e-12);
    let raw = span / target as f64;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0].iter().map(|f| f * mag).find(|s| *s >= raw).unwrap_or(10.0 * mag);
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    ((first..=last).map(|k| k as f64 * step).collect(), step)
}

fn label(v: f64, step: f64) -> String {
    let decimals = (-step.log10().floor()).max(0.0) as usize;
    let s = format!("{v:.decimals$}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        format!("{:.decimals$}", 0.0)
    } else {
        s
    }
}

fn coord(x: f64) -> String {
    let s = format!("{x:.10}");
    if s == "-0.0000000000" {
        "0.0000000000".into()
    } else {
        s
    }
}

pub struct Series<'a> {
    pub label: &'a str,
    pub points: &'a [Vec3],
}

/// Renders the polylines into a complete SVG document.
pub fn render(title: &str, series: &[Series<'_>], view: View) -> String {
    let axes = screen_axes(view);
    let projected: Vec<Vec<(f64, f64)>> =
        series.iter().map(|s| s.points.iter().map(|p| project(p, &axes)).collect()).collect();
    let mut lo = (f64::INFINITY, f64::INFINITY);
    let mut hi = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for &(u, v) in projected.iter().flatten() {
        lo = (lo.0.min(u), lo.1.min(v));
        hi = (hi.0.max(u), hi.1.max(v));
    }
    if !lo.0.is_finite() {
        lo = (-1.0, -1.0);
        hi = (1.0, 1.0);
    }
    let frame = Frame::fit(lo, hi);
    let (left, top) = (MARGIN_LEFT, MARGIN_TOP);
    let (right, bottom) = (WIDTH - MARGIN_RIGHT, HEIGHT - MARGIN_BOTTOM);

    let mut s = String::new();
    writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    )
    .unwrap();
    writeln!(s, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#).unwrap();
    writeln!(
        s,
        r#"<text x="{}" y="24" font-family="sans-serif" font-size="14" text-anchor="middle">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    )
    .unwrap();
    writeln!(
        s,
        r#"<rect x="{left}" y="{top}" width="{}" height="{}" fill="none" stroke="black" stroke-width="1"/>"#,
        right - left,
        bottom - top
    )
    .unwrap();

    let (ulo, vhi) = frame.locate(left, top);
    let (uhi, vlo) = frame.locate(right, bottom);
    let (uticks, ustep) = ticks(ulo, uhi, 8);
    let (vticks, vstep) = ticks(vlo, vhi, 6);
    s.push_str(r#"<g font-family="sans-serif" font-size="10" stroke="black" stroke-width="1">"#);
    s.push('\n');
    for u in uticks {
        let (x, _) = frame.place(u, 0.0);
        writeln!(s, r#"<line x1="{0}" y1="{bottom}" x2="{0}" y2="{1}"/>"#, coord(x), bottom + TICK).unwrap();
        writeln!(
            s,
            r#"<text x="{}" y="{}" stroke="none" text-anchor="middle">{}</text>"#,
            coord(x),
            bottom + 18.0,
            label(u, ustep)
        )
        .unwrap();
    }
    for v in vticks {
        let (_, y) = frame.place(0.0, v);
        writeln!(s, r#"<line x1="{1}" y1="{0}" x2="{left}" y2="{0}"/>"#, coord(y), left - TICK).unwrap();
        writeln!(
            s,
            r#"<text x="{}" y="{}" stroke="none" text-anchor="end">{}</text>"#,
            left - 8.0,
            coord(y + 3.5),
            label(v, vstep)
        )
        .unwrap();
    }
    s.push_str("</g>\n");

    for (k, (pts, ser)) in projected.iter().zip(series).enumerate() {
        let color = COLORS[k % COLORS.len()];
        let mut list = String::new();
        for (i, &(u, v)) in pts.iter().enumerate() {
            let (x, y) = frame.place(u, v);
            if i > 0 {
                list.push(' ');
            }
            list.push_str(&coord(x));
            list.push(',');
            list.push_str(&coord(y));
        }
        writeln!(s, r#"<polyline fill="none" stroke="{color}" stroke-width="1" points="{list}"/>"#).unwrap();
        writeln!(
            s,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="11" fill="{color}">{}</text>"#,
            left + 8.0,
            top + 16.0 + 14.0 * k as f64,
            escape(ser.label)
        )
        .unwrap();
    }
    writeln!(
        s,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="10" text-anchor="end">azimuth {} deg, elevation {} deg</text>"#,
        right,
        HEIGHT - 10.0,
        view.azimuth,
        view.elevation
    )
    .unwrap();
    s.push_str("</svg>\n");
    s
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}
