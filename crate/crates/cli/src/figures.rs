//! The four report figures.

use zerodist::pipeline::{CircleCheck, Theorem1Report};
use zerodist::roots::RootSet;
use zerodist::series::CoeffSeq;
use zerodist::wiman::Segmentation;

use crate::plot::{data_range, Frame, Mark, Rect, Svg, FULL};

const BLUE: &str = "#1f5fbf";
const RED: &str = "#c0392b";
const GREEN: &str = "#1e8449";
const GRAY: &str = "#7f8c8d";

/// Roots as plane points, with deflated zeros at the origin.
fn plane_points(r: &RootSet) -> Vec<(f64, f64)> {
    let mut pts: Vec<(f64, f64)> = r.points().iter().map(|z| (z.re, z.im)).collect();
    pts.extend(std::iter::repeat_n((0.0, 0.0), r.zeros_at_origin));
    pts
}

/// `lower` and `upper` bounds on `(1/V) ln M(e^t)` with the fitted pieces.
pub fn profile(f: &CoeffSeq, t1: &Theorem1Report, seg: Option<&Segmentation>) -> String {
    let p = &t1.profile;
    let t = &p.t_grid;
    let (t_lo, t_hi) = (t[0], t[t.len() - 1]);
    let lower: Vec<(f64, f64)> = t.iter().copied().zip(p.lower.iter().copied()).collect();
    let upper: Vec<(f64, f64)> = t.iter().copied().zip(p.upper.iter().copied()).collect();
    let frame = Frame::new(FULL, (t_lo, t_hi), data_range(p.lower.iter().chain(&p.upper).copied()));

    let mut svg = Svg::new(&format!("modulus profile of {} (n = {})", f.label(), f.n()));
    svg.axes(&frame, "t = ln r", "(1/V) ln M(e^t)");
    svg.polyline(&frame, &upper, RED, false);
    svg.polyline(&frame, &lower, BLUE, false);
    let mut legend = vec![("upper bound", RED, Mark::Line), ("lower bound", BLUE, Mark::Line)];
    if let Some(seg) = seg {
        for piece in &seg.pieces {
            let (a, b) = (piece.t_from.max(t_lo), piece.t_to.min(t_hi));
            if a < b {
                let at = |x: f64| (x, piece.slope * x + piece.intercept);
                svg.polyline(&frame, &[at(a), at(b)], GREEN, true);
            }
        }
        for c in &seg.circles {
            let x = c.radius.ln();
            if x > t_lo && x < t_hi {
                svg.vline(&frame, x, GRAY);
            }
        }
        legend.push(("piecewise fit", GREEN, Mark::Dashed));
    }
    svg.legend(FULL, &legend);
    svg.finish()
}

/// The coefficient envelope and its Legendre transform, stacked.
pub fn envelope(f: &CoeffSeq, t1: &Theorem1Report) -> String {
    let top = Rect { left: 110.0, top: 80.0, width: 840.0, height: 340.0 };
    let bottom = Rect { left: 110.0, top: 540.0, width: 840.0, height: 340.0 };
    let mut svg = Svg::new(&format!("coefficient envelope of {} (n = {})", f.label(), f.n()));

    let psi = &t1.psi;
    let pts = f.log_magnitudes();
    let v = f.v();
    let cloud: Vec<(f64, f64)> =
        pts.iter().enumerate().filter(|(_, l)| l.is_finite()).map(|(k, &l)| (k as f64 / v, -l / v)).collect();
    let verts: Vec<(f64, f64)> = psi.breakpoints().iter().copied().zip(psi.values().iter().copied()).collect();
    let fa = Frame::new(
        top,
        data_range(cloud.iter().map(|p| p.0)),
        data_range(cloud.iter().map(|p| p.1).chain(verts.iter().map(|p| p.1))),
    );
    svg.axes(&fa, "x = k / V", "-ln|a_k| / V");
    svg.dots(&fa, &cloud, GRAY, 3.0);
    svg.polyline(&fa, &verts, BLUE, false);
    svg.dots(&fa, &verts, BLUE, 5.0);
    svg.legend(top, &[("points", GRAY, Mark::Dot), ("envelope psi", BLUE, Mark::Line)]);

    let t = &t1.profile.t_grid;
    let conj: Vec<(f64, f64)> = t.iter().map(|&x| (x, t1.legendre_psi.eval(x))).collect();
    let fb = Frame::new(bottom, (t[0], t[t.len() - 1]), data_range(conj.iter().map(|p| p.1)));
    svg.axes(&fb, "t", "L(psi)(t)");
    svg.polyline(&fb, &conj, RED, false);
    svg.legend(bottom, &[("Legendre transform", RED, Mark::Line)]);
    svg.finish()
}

/// Zeros in the plane with the paired circles.
pub fn roots(f: &CoeffSeq, r: &RootSet, circles: &[CircleCheck]) -> String {
    let pts = plane_points(r);
    let reach = circles.iter().map(|c| c.radius).filter(|x| x.is_finite()).fold(1e-12, f64::max);
    let frame = Frame::square(FULL, &pts, reach);
    let mut svg = Svg::new(&format!("zeros of {} (n = {}, {} zeros)", f.label(), f.n(), pts.len()));
    svg.axes(&frame, "Re z", "Im z");
    for c in circles {
        svg.ring(&frame, 0.0, 0.0, c.radius, GREEN);
    }
    svg.dots(&frame, &pts, BLUE, 4.0);
    let mut legend = vec![("zeros", BLUE, Mark::Dot)];
    if !circles.is_empty() {
        legend.push(("circles", GREEN, Mark::Dashed));
    }
    svg.legend(FULL, &legend);
    svg.finish()
}

/// Zeros against critical points.
pub fn overlay(f: &CoeffSeq, zeros: Option<&RootSet>, crit: Option<&RootSet>) -> String {
    let z = zeros.map(plane_points).unwrap_or_default();
    let c = crit.map(plane_points).unwrap_or_default();
    let all: Vec<(f64, f64)> = z.iter().chain(&c).copied().collect();
    let frame = Frame::square(FULL, &all, 1e-12);
    let mut svg = Svg::new(&format!("zeros and critical points of {} (n = {})", f.label(), f.n()));
    svg.axes(&frame, "Re z", "Im z");
    svg.dots(&frame, &z, BLUE, 4.5);
    svg.crosses(&frame, &c, RED, 6.0);
    svg.legend(FULL, &[("zeros of f", BLUE, Mark::Dot), ("zeros of f'", RED, Mark::Cross)]);
    svg.finish()
}
