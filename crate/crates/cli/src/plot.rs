//! Static SVG figures on a fixed 1000x1000 view box.
//!
//! Output depends only on the data: no timestamps, coordinates rounded to
//! two decimals.

use std::fmt::Write;

const SIZE: f64 = 1000.0;

/// Pixel rectangle of one panel.
#[derive(Clone, Copy, Debug)]
pub struct Rect {
    pub left: f64,
    pub top: f64,
    pub width: f64,
    pub height: f64,
}

/// Full-canvas panel leaving room for title, ticks and labels.
pub const FULL: Rect = Rect { left: 110.0, top: 80.0, width: 840.0, height: 810.0 };

/// Data window mapped onto a pixel rectangle.
#[derive(Clone, Copy, Debug)]
pub struct Frame {
    rect: Rect,
    x: (f64, f64),
    y: (f64, f64),
}

impl Frame {
    pub fn new(rect: Rect, x: (f64, f64), y: (f64, f64)) -> Self {
        Frame { rect, x, y }
    }

    /// Square window centred at the origin holding every point, for scatters
    /// of complex numbers.
    pub fn square(rect: Rect, pts: &[(f64, f64)], min_half: f64) -> Self {
        let half = pts
            .iter()
            .filter(|p| p.0.is_finite() && p.1.is_finite())
            .map(|p| p.0.abs().max(p.1.abs()))
            .fold(min_half, f64::max)
            * 1.1;
        let side = rect.width.min(rect.height);
        let rect = Rect {
            left: rect.left + (rect.width - side) / 2.0,
            top: rect.top + (rect.height - side) / 2.0,
            width: side,
            height: side,
        };
        Frame { rect, x: (-half, half), y: (-half, half) }
    }

    fn px(&self, x: f64, y: f64) -> (f64, f64) {
        let r = &self.rect;
        (
            r.left + (x - self.x.0) / (self.x.1 - self.x.0) * r.width,
            r.top + (self.y.1 - y) / (self.y.1 - self.y.0) * r.height,
        )
    }

    fn scale(&self) -> (f64, f64) {
        (self.rect.width / (self.x.1 - self.x.0), self.rect.height / (self.y.1 - self.y.0))
    }
}

/// Finite min/max padded by 5%; a degenerate range is widened.
pub fn data_range(values: impl IntoIterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values
        .into_iter()
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    if !lo.is_finite() {
        return (-1.0, 1.0);
    }
    let span = hi - lo;
    if span <= 1e-12 * lo.abs().max(1.0) {
        let w = 0.1 * lo.abs().max(1.0);
        return (lo - w, hi + w);
    }
    (lo - 0.05 * span, hi + 0.05 * span)
}

fn ticks(lo: f64, hi: f64) -> (Vec<f64>, f64) {
    let raw = (hi - lo) / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0].iter().map(|m| m * mag).find(|&s| s >= raw).unwrap_or(10.0 * mag);
    let mut out = Vec::new();
    let mut k = (lo / step).ceil();
    while k * step <= hi + 1e-9 * step {
        out.push(k * step);
        k += 1.0;
    }
    (out, step)
}

fn tick_label(v: f64, step: f64) -> String {
    if v.abs() >= 1e6 || (v != 0.0 && v.abs() < 1e-4) {
        return format!("{v:.2e}");
    }
    let digits = (-step.log10().floor()).max(0.0) as usize;
    let s = format!("{v:.digits$}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        "0".into()
    } else {
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Marker drawn in a legend entry.
#[derive(Clone, Copy, Debug)]
pub enum Mark {
    Line,
    Dashed,
    Dot,
    Cross,
}

pub struct Svg {
    out: String,
}

impl Svg {
    pub fn new(title: &str) -> Self {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {SIZE} {SIZE}\" width=\"{SIZE}\" height=\"{SIZE}\" font-family=\"sans-serif\">"
        );
        let _ = writeln!(out, "<!-- zerodist {} -->", env!("CARGO_PKG_VERSION"));
        let _ = writeln!(out, "<rect x=\"0\" y=\"0\" width=\"{SIZE}\" height=\"{SIZE}\" fill=\"white\"/>");
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"40\" text-anchor=\"middle\" font-size=\"26\">{}</text>",
            SIZE / 2.0,
            escape(title)
        );
        Svg { out }
    }

    pub fn axes(&mut self, f: &Frame, x_label: &str, y_label: &str) {
        let r = f.rect;
        let _ = writeln!(
            self.out,
            "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"none\" stroke=\"black\"/>",
            r.left, r.top, r.width, r.height
        );
        let (xt, xs) = ticks(f.x.0, f.x.1);
        for v in xt {
            let (px, _) = f.px(v, f.y.0);
            let y0 = r.top + r.height;
            let _ = writeln!(
                self.out,
                "<line x1=\"{px:.2}\" y1=\"{y0:.2}\" x2=\"{px:.2}\" y2=\"{:.2}\" stroke=\"black\"/><text x=\"{px:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-size=\"16\">{}</text>",
                y0 + 8.0,
                y0 + 28.0,
                tick_label(v, xs)
            );
        }
        let (yt, ys) = ticks(f.y.0, f.y.1);
        for v in yt {
            let (_, py) = f.px(f.x.0, v);
            let _ = writeln!(
                self.out,
                "<line x1=\"{:.2}\" y1=\"{py:.2}\" x2=\"{:.2}\" y2=\"{py:.2}\" stroke=\"black\"/><text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\" font-size=\"16\">{}</text>",
                r.left - 8.0,
                r.left,
                r.left - 12.0,
                py + 5.0,
                tick_label(v, ys)
            );
        }
        let _ = writeln!(
            self.out,
            "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-size=\"20\">{}</text>",
            r.left + r.width / 2.0,
            r.top + r.height + 60.0,
            escape(x_label)
        );
        let (lx, ly) = (r.left - 75.0, r.top + r.height / 2.0);
        let _ = writeln!(
            self.out,
            "<text x=\"{lx:.2}\" y=\"{ly:.2}\" text-anchor=\"middle\" font-size=\"20\" transform=\"rotate(-90 {lx:.2} {ly:.2})\">{}</text>",
            escape(y_label)
        );
    }

    /// Connected path; non-finite points break it into runs.
    pub fn polyline(&mut self, f: &Frame, pts: &[(f64, f64)], color: &str, dashed: bool) {
        let dash = if dashed { " stroke-dasharray=\"10 6\"" } else { "" };
        for run in pts.split(|p| !(p.0.is_finite() && p.1.is_finite())) {
            if run.len() < 2 {
                continue;
            }
            let coords: Vec<String> = run
                .iter()
                .map(|&(x, y)| {
                    let (a, b) = f.px(x, y);
                    format!("{a:.2},{b:.2}")
                })
                .collect();
            let _ = writeln!(
                self.out,
                "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"2.5\"{dash}/>",
                coords.join(" ")
            );
        }
    }

    pub fn dots(&mut self, f: &Frame, pts: &[(f64, f64)], color: &str, radius: f64) {
        for &(x, y) in pts.iter().filter(|p| p.0.is_finite() && p.1.is_finite()) {
            let (a, b) = f.px(x, y);
            let _ = writeln!(self.out, "<circle cx=\"{a:.2}\" cy=\"{b:.2}\" r=\"{radius}\" fill=\"{color}\"/>");
        }
    }

    pub fn crosses(&mut self, f: &Frame, pts: &[(f64, f64)], color: &str, size: f64) {
        for &(x, y) in pts.iter().filter(|p| p.0.is_finite() && p.1.is_finite()) {
            let (a, b) = f.px(x, y);
            let _ = writeln!(
                self.out,
                "<path d=\"M{:.2},{:.2}L{:.2},{:.2}M{:.2},{:.2}L{:.2},{:.2}\" stroke=\"{color}\" stroke-width=\"2\"/>",
                a - size,
                b - size,
                a + size,
                b + size,
                a - size,
                b + size,
                a + size,
                b - size
            );
        }
    }

    /// Circle of data radius `r` about the data point `(cx, cy)`.
    pub fn ring(&mut self, f: &Frame, cx: f64, cy: f64, r: f64, color: &str) {
        let (a, b) = f.px(cx, cy);
        let (sx, sy) = f.scale();
        let _ = writeln!(
            self.out,
            "<ellipse cx=\"{a:.2}\" cy=\"{b:.2}\" rx=\"{:.2}\" ry=\"{:.2}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"2\" stroke-dasharray=\"10 6\"/>",
            r * sx,
            r * sy
        );
    }

    pub fn vline(&mut self, f: &Frame, x: f64, color: &str) {
        let (a, top) = f.px(x, f.y.1);
        let (_, bottom) = f.px(x, f.y.0);
        let _ = writeln!(
            self.out,
            "<line x1=\"{a:.2}\" y1=\"{top:.2}\" x2=\"{a:.2}\" y2=\"{bottom:.2}\" stroke=\"{color}\" stroke-width=\"1.5\" stroke-dasharray=\"4 4\"/>"
        );
    }

    /// Legend box in the top-right corner of `rect`.
    pub fn legend(&mut self, rect: Rect, entries: &[(&str, &str, Mark)]) {
        let w = 260.0;
        let x0 = rect.left + rect.width - w - 10.0;
        let y0 = rect.top + 10.0;
        let _ = writeln!(
            self.out,
            "<rect x=\"{x0:.2}\" y=\"{y0:.2}\" width=\"{w}\" height=\"{:.2}\" fill=\"white\" fill-opacity=\"0.85\" stroke=\"gray\"/>",
            10.0 + 28.0 * entries.len() as f64
        );
        for (i, &(label, color, mark)) in entries.iter().enumerate() {
            let y = y0 + 24.0 + 28.0 * i as f64;
            let (mx, tx) = (x0 + 30.0, x0 + 60.0);
            let marker = match mark {
                Mark::Line => format!(
                    "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"{color}\" stroke-width=\"2.5\"/>",
                    mx - 18.0,
                    y - 5.0,
                    mx + 18.0,
                    y - 5.0
                ),
                Mark::Dashed => format!(
                    "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"{color}\" stroke-width=\"2.5\" stroke-dasharray=\"10 6\"/>",
                    mx - 18.0,
                    y - 5.0,
                    mx + 18.0,
                    y - 5.0
                ),
                Mark::Dot => format!("<circle cx=\"{mx:.2}\" cy=\"{:.2}\" r=\"5\" fill=\"{color}\"/>", y - 5.0),
                Mark::Cross => format!(
                    "<path d=\"M{:.2},{:.2}L{:.2},{:.2}M{:.2},{:.2}L{:.2},{:.2}\" stroke=\"{color}\" stroke-width=\"2\"/>",
                    mx - 6.0,
                    y - 11.0,
                    mx + 6.0,
                    y + 1.0,
                    mx - 6.0,
                    y + 1.0,
                    mx + 6.0,
                    y - 11.0
                ),
            };
            let _ = writeln!(self.out, "{marker}<text x=\"{tx:.2}\" y=\"{y:.2}\" font-size=\"18\">{}</text>", escape(label));
        }
    }

    pub fn finish(mut self) -> String {
        self.out.push_str("</svg>\n");
        self.out
    }
}
