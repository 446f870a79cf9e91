use std::fmt::Write;

use super::ticks::{autoscale, label, Axis};
use super::{ChartData, ChartKind, ChartSpec};

pub const DEFAULT_WIDTH: u32 = 640;
pub const DEFAULT_HEIGHT: u32 = 420;

const LEFT: f64 = 72.0;
const RIGHT: f64 = 24.0;
const TOP: f64 = 44.0;
const BOTTOM: f64 = 60.0;

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

fn axis(range: Option<(f64, f64)>, min: f64, max: f64) -> Axis {
    match range {
        Some((a, b)) if a < b => {
            let mut ax = autoscale(a, b);
            ax.ticks.retain(|t| *t >= a && *t <= b);
            ax.lo = a;
            ax.hi = b;
            ax
        }
        _ => autoscale(min, max),
    }
}

fn extent(v: &[f64]) -> (f64, f64) {
    v.iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| (lo.min(x), hi.max(x)))
}

/// Maps data coordinates into the plot frame, clamping into the frame so
/// every emitted coordinate lies inside the view box.
struct Frame {
    x0: f64,
    y0: f64,
    w: f64,
    h: f64,
    xa: Axis,
    ya: Axis,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        let t = (x - self.xa.lo) / (self.xa.hi - self.xa.lo);
        self.x0 + t.clamp(0.0, 1.0) * self.w
    }

    fn py(&self, y: f64) -> f64 {
        let t = (y - self.ya.lo) / (self.ya.hi - self.ya.lo);
        self.y0 + self.h - t.clamp(0.0, 1.0) * self.h
    }
}

/// Renders a standalone SVG document. Identical specs give identical bytes.
pub fn render_svg(c: &ChartSpec, width: u32, height: u32) -> String {
    let (wf, hf) = (f64::from(width.max(200)), f64::from(height.max(150)));
    let (xa, ya) = match &c.data {
        ChartData::Points { x, y } => {
            let (xl, xh) = extent(x);
            let (yl, yh) = extent(y);
            (axis(c.xrange, xl, xh), axis(c.yrange, yl, yh))
        }
        ChartData::Bins { edges, counts } => {
            let top = counts.iter().copied().max().unwrap_or(0) as f64;
            let (lo, hi) = (edges[0], edges[edges.len() - 1]);
            (axis(c.xrange, lo, hi), axis(c.yrange, 0.0, top.max(1.0)))
        }
    };
    let f = Frame {
        x0: LEFT,
        y0: TOP,
        w: wf - LEFT - RIGHT,
        h: hf - TOP - BOTTOM,
        xa,
        ya,
    };
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{wf}" height="{hf}" viewBox="0 0 {wf} {hf}" font-family="sans-serif" font-size="12">"#
    );
    let (x1, y1, x2, y2) = (f.x0, f.y0, f.x0 + f.w, f.y0 + f.h);
    s.push_str(r##"<g class="frame" stroke="#333" stroke-width="1">"##);
    s.push('\n');
    for (a, b, c2, d) in [(x1, y1, x2, y1), (x2, y1, x2, y2), (x2, y2, x1, y2), (x1, y2, x1, y1)] {
        let _ = writeln!(s, r#"<line x1="{a:.2}" y1="{b:.2}" x2="{c2:.2}" y2="{d:.2}"/>"#);
    }
    s.push_str("</g>\n");

    s.push_str(r##"<g class="ticks" stroke="#333" fill="#333">"##);
    s.push('\n');
    for &t in &f.xa.ticks {
        let x = f.px(t);
        let _ = writeln!(s, r#"<line x1="{x:.2}" y1="{y2:.2}" x2="{x:.2}" y2="{:.2}"/>"#, y2 + 5.0);
        let _ = writeln!(
            s,
            r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle" stroke="none">{}</text>"#,
            y2 + 19.0,
            escape(&label(t, f.xa.exp10))
        );
    }
    for &t in &f.ya.ticks {
        let y = f.py(t);
        let _ = writeln!(s, r#"<line x1="{:.2}" y1="{y:.2}" x2="{x1:.2}" y2="{y:.2}"/>"#, x1 - 5.0);
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end" stroke="none">{}</text>"#,
            x1 - 8.0,
            y + 4.0,
            escape(&label(t, f.ya.exp10))
        );
    }
    s.push_str("</g>\n");

    match (&c.data, c.kind) {
        (ChartData::Points { x, y }, ChartKind::Scatter) => {
            s.push_str(r##"<g class="series" fill="#1f77b4">"##);
            s.push('\n');
            for (a, b) in x.iter().zip(y) {
                let _ = writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="3"/>"#, f.px(*a), f.py(*b));
            }
            s.push_str("</g>\n");
        }
        (ChartData::Points { x, y }, _) => {
            let pts: Vec<String> = x
                .iter()
                .zip(y)
                .map(|(a, b)| format!("{:.2},{:.2}", f.px(*a), f.py(*b)))
                .collect();
            let _ = writeln!(
                s,
                r##"<polyline class="series" fill="none" stroke="#1f77b4" stroke-width="1.5" points="{}"/>"##,
                pts.join(" ")
            );
        }
        (ChartData::Bins { edges, counts }, _) => {
            s.push_str(r##"<g class="series" fill="#1f77b4" stroke="#fff">"##);
            s.push('\n');
            for (i, &n) in counts.iter().enumerate() {
                let (l, r) = (f.px(edges[i]), f.px(edges[i + 1]));
                let (top, base) = (f.py(n as f64), f.py(0.0));
                let _ = writeln!(
                    s,
                    r#"<rect x="{l:.2}" y="{top:.2}" width="{:.2}" height="{:.2}"/>"#,
                    r - l,
                    base - top
                );
            }
            s.push_str("</g>\n");
        }
    }

    if let Some(t) = &c.title {
        let _ = writeln!(
            s,
            r#"<text class="title" x="{:.2}" y="24" text-anchor="middle" font-size="16">{}</text>"#,
            wf / 2.0,
            escape(t)
        );
    }
    if let Some(t) = &c.xtitle {
        let _ = writeln!(
            s,
            r#"<text class="xtitle" x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            f.x0 + f.w / 2.0,
            hf - 14.0,
            escape(t)
        );
    }
    if let Some(t) = &c.ytitle {
        let (tx, ty) = (18.0, f.y0 + f.h / 2.0);
        let _ = writeln!(
            s,
            r#"<text class="ytitle" x="{tx:.2}" y="{ty:.2}" text-anchor="middle" transform="rotate(-90 {tx:.2} {ty:.2})">{}</text>"#,
            escape(t)
        );
    }
    s.push_str("</svg>\n");
    s
}
