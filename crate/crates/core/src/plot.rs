//! Minimal SVG line charts of θ, ω and u against time.

use std::fmt::Write;

use crate::sim::{Sample, Trajectory};

const PANEL_W: f64 = 420.0;
const PANEL_H: f64 = 160.0;
const MARGIN_L: f64 = 64.0;
const MARGIN_T: f64 = 36.0;
const GAP_X: f64 = 40.0;
const GAP_Y: f64 = 44.0;
/// Upper bound on plotted points per series.
const MAX_POINTS: usize = 1500;

type Series = (&'static str, fn(&Sample) -> f64);

const SERIES: [Series; 3] = [
    ("theta [rad]", |s| s.theta),
    ("omega [rad/s]", |s| s.omega),
    ("u [m/s^2]", |s| s.u),
];

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    });
    if !lo.is_finite() || !hi.is_finite() {
        return (-1.0, 1.0);
    }
    let pad = ((hi - lo) * 0.05).max(1e-9);
    (lo - pad, hi + pad)
}

fn panel(
    out: &mut String,
    x0: f64,
    y0: f64,
    title: &str,
    samples: &[Sample],
    f: fn(&Sample) -> f64,
) {
    let (t_lo, t_hi) = match (samples.first(), samples.last()) {
        (Some(a), Some(b)) if b.t > a.t => (a.t, b.t),
        _ => (0.0, 1.0),
    };
    let (v_lo, v_hi) = range(samples.iter().map(f));
    let sx = |t: f64| x0 + (t - t_lo) / (t_hi - t_lo) * PANEL_W;
    let sy = |v: f64| y0 + PANEL_H - (v - v_lo) / (v_hi - v_lo) * PANEL_H;

    let _ = writeln!(
        out,
        r##"<rect x="{x0:.1}" y="{y0:.1}" width="{PANEL_W}" height="{PANEL_H}" fill="none" stroke="#888"/>"##
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="{:.1}" font-size="13">{}</text>"#,
        x0,
        y0 - 8.0,
        escape(title)
    );
    if v_lo < 0.0 && v_hi > 0.0 {
        let y = sy(0.0);
        let _ = writeln!(
            out,
            r##"<line x1="{x0:.1}" y1="{y:.1}" x2="{:.1}" y2="{y:.1}" stroke="#ccc"/>"##,
            x0 + PANEL_W
        );
    }
    for (v, y) in [(v_hi, y0 + 10.0), (v_lo, y0 + PANEL_H)] {
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{y:.1}" font-size="10" text-anchor="end">{v:.3}</text>"#,
            x0 - 4.0
        );
    }
    for (t, anchor) in [(t_lo, "start"), (t_hi, "end")] {
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" font-size="10" text-anchor="{anchor}">t = {t:.2} s</text>"#,
            sx(t),
            y0 + PANEL_H + 14.0
        );
    }
    let stride = samples.len().div_ceil(MAX_POINTS).max(1);
    let mut points = String::new();
    for (i, s) in samples.iter().enumerate() {
        if i % stride == 0 || i + 1 == samples.len() {
            let _ = write!(points, "{:.2},{:.2} ", sx(s.t), sy(f(s)));
        }
    }
    let _ = writeln!(
        out,
        r##"<polyline fill="none" stroke="#1f5fa8" stroke-width="1.2" points="{}"/>"##,
        points.trim_end()
    );
}

/// One column of three panels per trajectory.
pub fn render_svg(runs: &[(&str, &Trajectory)]) -> String {
    let cols = runs.len().max(1) as f64;
    let width = MARGIN_L + cols * (PANEL_W + GAP_X);
    let height = MARGIN_T + 3.0 * (PANEL_H + GAP_Y);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for (c, (label, tr)) in runs.iter().enumerate() {
        let x0 = MARGIN_L + c as f64 * (PANEL_W + GAP_X);
        for (r, (name, f)) in SERIES.iter().enumerate() {
            let y0 = MARGIN_T + r as f64 * (PANEL_H + GAP_Y);
            let title = format!("{label}: {name}");
            panel(&mut out, x0, y0, &title, &tr.samples, *f);
        }
    }
    out.push_str("</svg>\n");
    out
}
