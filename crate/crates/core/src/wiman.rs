//! Maximal term, central index and two-sided bounds on `ln M(e^t)`.
//!
//! With `m(r) = max_k |a_k| r^k` and `nu(r)` the largest index attaining it,
//! every power series satisfies
//!
//! ```text
//! ln m(r) <= ln M(r) <= min( ln m(r1) + ln(nu(r) + r1/(r1 - r)),  ln sum_k |a_k| r^k )
//! ```
//!
//! for `r < r1`. The left inequality is Cauchy's estimate, the first upper
//! bound is Valiron's lemma and the second the triangle inequality.
//! [`phi_profile`] evaluates both sides on a grid of `t = ln r`, divided by
//! the family normalization `V`.

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::CoeffSeq;

/// `(ln m(e^t), nu(e^t))` from precomputed `ln|a_k|` (`-inf` for zeros).
pub(crate) fn maximal_term_logs(logs: &[f64], t: f64) -> (f64, usize) {
    let mut best = f64::NEG_INFINITY;
    let mut nu = 0;
    for (k, &l) in logs.iter().enumerate() {
        if l == f64::NEG_INFINITY {
            continue;
        }
        let v = l + k as f64 * t;
        if v >= best {
            best = v;
            nu = k;
        }
    }
    (best, nu)
}

/// `ln sum_k |a_k| e^{kt}`, stable log-sum-exp.
pub(crate) fn log_abs_sum(logs: &[f64], t: f64) -> f64 {
    let (top, _) = maximal_term_logs(logs, t);
    let s: f64 = logs
        .iter()
        .enumerate()
        .filter(|(_, l)| l.is_finite())
        .map(|(k, &l)| (l + k as f64 * t - top).exp())
        .sum();
    top + s.ln()
}

fn valiron_from_logs(logs: &[f64], t: f64, t1: f64) -> f64 {
    let (_, nu) = maximal_term_logs(logs, t);
    let (log_m1, _) = maximal_term_logs(logs, t1);
    // r1 / (r1 - r) = 1 / (1 - e^{t - t1})
    let ratio = -1.0 / (t - t1).exp_m1();
    log_m1 + (nu as f64 + ratio).ln()
}

/// Maximal term and central index at `r = e^t`. Ties go to the larger index.
pub fn maximal_term(f: &CoeffSeq, t: f64) -> (f64, usize) {
    maximal_term_logs(&f.log_magnitudes(), t)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CentralIndexBound {
    /// `nu(e^t) (t1 - t)`
    pub lhs: f64,
    /// `ln m(e^{t1}) - ln m(e^t)`
    pub rhs: f64,
    pub holds: bool,
}

/// Self-check of `nu(r) ln(r1/r) <= ln m(r1) - ln m(r)`.
pub fn central_index_bound(f: &CoeffSeq, t: f64, t1: f64) -> Result<CentralIndexBound> {
    if t.is_nan() || t1.is_nan() || t >= t1 {
        return Err(Error::InvalidArgument(format!("need t < t1, got t={t}, t1={t1}")));
    }
    let logs = f.log_magnitudes();
    let (lm, nu) = maximal_term_logs(&logs, t);
    let (lm1, _) = maximal_term_logs(&logs, t1);
    let lhs = nu as f64 * (t1 - t);
    let rhs = lm1 - lm;
    let slack = 1e-12 * lm.abs().max(lm1.abs()).max(1.0);
    Ok(CentralIndexBound { lhs, rhs, holds: lhs <= rhs + slack })
}

/// Valiron's upper bound for `ln M(e^t)`, using the circle `e^{t1}`.
pub fn valiron_upper(f: &CoeffSeq, t: f64, t1: f64) -> Result<f64> {
    if t.is_nan() || t1.is_nan() || t >= t1 {
        return Err(Error::InvalidArgument(format!("need t < t1, got t={t}, t1={t1}")));
    }
    Ok(valiron_from_logs(&f.log_magnitudes(), t, t1))
}

/// Lower and upper bounds on `(1/V) ln M(e^t)` over a grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Profile {
    pub t_grid: Vec<f64>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    #[serde(rename = "V")]
    pub v: f64,
}

impl Profile {
    /// `max_i (upper_i - lower_i)`.
    pub fn gap(&self) -> f64 {
        self.lower.iter().zip(&self.upper).map(|(l, u)| u - l).fold(0.0, f64::max)
    }
}

fn check_grid(t_grid: &[f64]) -> Result<()> {
    if t_grid.is_empty() {
        return Err(Error::InvalidArgument("empty t grid".into()));
    }
    if t_grid.iter().any(|t| !t.is_finite()) || t_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("t grid must be finite and strictly increasing".into()));
    }
    Ok(())
}

/// `n` equispaced points on `[t_min, t_max]`.
pub fn linear_grid(t_min: f64, t_max: f64, n: usize) -> Result<Vec<f64>> {
    if n < 2 || !t_min.is_finite() || !t_max.is_finite() || t_min >= t_max {
        return Err(Error::InvalidArgument(format!("bad grid {t_min}:{t_max}:{n}")));
    }
    let h = (t_max - t_min) / (n - 1) as f64;
    Ok((0..n).map(|i| if i + 1 == n { t_max } else { t_min + h * i as f64 }).collect())
}

/// Upper bound at grid point `i` pairs it with `t1 = t_{i+1}`; the last point
/// reuses the previous spacing (or 1e-3 for a one-point grid).
pub fn phi_profile(f: &CoeffSeq, t_grid: &[f64]) -> Result<Profile> {
    check_grid(t_grid)?;
    let logs = f.log_magnitudes();
    let v = f.v();
    let n = t_grid.len();
    let mut lower = Vec::with_capacity(n);
    let mut upper = Vec::with_capacity(n);
    for (i, &t) in t_grid.iter().enumerate() {
        let t1 = if i + 1 < n {
            t_grid[i + 1]
        } else if n > 1 {
            t + (t - t_grid[i - 1])
        } else {
            t + 1e-3
        };
        let lo = maximal_term_logs(&logs, t).0;
        let hi = valiron_from_logs(&logs, t, t1).min(log_abs_sum(&logs, t)).max(lo);
        lower.push(lo / v);
        upper.push(hi / v);
    }
    Ok(Profile { t_grid: t_grid.to_vec(), lower, upper, v })
}

/// `ln max_l |f(e^t w_l)|` over `n_points` equispaced points `w_l` of the
/// unit circle, via one FFT of the coefficients folded modulo `n_points`.
pub fn sample_log_max_modulus(f: &CoeffSeq, t: f64, n_points: usize) -> Result<f64> {
    if n_points == 0 {
        return Err(Error::InvalidArgument("need at least one sample point".into()));
    }
    let logs = f.log_magnitudes();
    let (log_m, _) = maximal_term_logs(&logs, t);
    let mut buf = vec![Complex64::new(0.0, 0.0); n_points];
    for (k, (c, &l)) in f.coeffs().iter().zip(&logs).enumerate() {
        if l == f64::NEG_INFINITY {
            continue;
        }
        let mag = (l + k as f64 * t - log_m).exp();
        buf[k % n_points] += Complex64::from_polar(mag, c.arg());
    }
    FftPlanner::new().plan_fft_inverse(n_points).process(&mut buf);
    let peak = buf.iter().map(|z| z.norm()).fold(0.0, f64::max);
    Ok(log_m + peak.ln())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Piece {
    pub t_from: f64,
    pub t_to: f64,
    pub slope: f64,
    pub intercept: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    pub radius: f64,
    pub mass: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Hypotheses {
    /// First slope is 0 within tolerance: the profile is constant near 0.
    pub constant_near_origin: bool,
    /// First slope is `>= -tol` and the last is 1 within tolerance.
    pub polynomial_slopes: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Segmentation {
    pub pieces: Vec<Piece>,
    pub circles: Vec<Circle>,
    pub hypotheses: Hypotheses,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DetectOptions {
    /// Largest accepted `upper - lower`.
    pub gap_tol: f64,
    /// Largest slope spread inside one affine piece.
    pub slope_tol: f64,
}

/// [`detect_piecewise_harmonic_with`] using `tol` for both tolerances.
pub fn detect_piecewise_harmonic(p: &Profile, tol: f64) -> Result<Segmentation> {
    detect_piecewise_harmonic_with(p, DetectOptions { gap_tol: tol, slope_tol: tol })
}

/// Splits the profile into affine pieces and reads off the circles where the
/// slope jumps.
///
/// The segmented curve is `lower`, the maximal-term side: it is exactly
/// convex and piecewise linear, so slopes come out without the smoothing
/// that the Valiron side adds. `upper` only has to confirm that the profile
/// is pinned (gap within `gap_tol`).
///
/// Interval slopes are grouped greedily while they stay within `slope_tol`
/// of the group's first slope. A one-interval group between two others is a
/// grid cell straddling a kink and is dropped. Each piece is the chord over
/// its group; circles sit where adjacent chords meet, with mass equal to the
/// slope jump.
pub fn detect_piecewise_harmonic_with(p: &Profile, opts: DetectOptions) -> Result<Segmentation> {
    let n = p.t_grid.len();
    if n < 2 || p.lower.len() != n || p.upper.len() != n {
        return Err(Error::InvalidArgument("profile needs at least two consistent grid points".into()));
    }
    let gap = p.gap();
    if gap > opts.gap_tol {
        return Err(Error::ProfileNotResolved { gap, tol: opts.gap_tol });
    }
    let t = &p.t_grid;
    let y = &p.lower;
    let d: Vec<f64> = (0..n - 1).map(|i| (y[i + 1] - y[i]) / (t[i + 1] - t[i])).collect();

    // groups of interval indices [start, end)
    let mut groups: Vec<(usize, usize)> = Vec::new();
    let mut start = 0;
    for i in 1..=d.len() {
        if i == d.len() || (d[i] - d[start]).abs() > opts.slope_tol {
            groups.push((start, i));
            start = i;
        }
    }
    let last = groups.len() - 1;
    let kept: Vec<(usize, usize)> = groups
        .iter()
        .enumerate()
        .filter(|&(g, &(s, e))| !(e - s == 1 && g > 0 && g < last))
        .map(|(_, &r)| r)
        .collect();

    let mut pieces: Vec<Piece> = kept
        .iter()
        .map(|&(s, e)| {
            let slope = (y[e] - y[s]) / (t[e] - t[s]);
            Piece { t_from: t[s], t_to: t[e], slope, intercept: y[s] - slope * t[s] }
        })
        .collect();

    let mut circles = Vec::with_capacity(pieces.len().saturating_sub(1));
    for j in 0..pieces.len().saturating_sub(1) {
        let (a, b) = (&pieces[j], &pieces[j + 1]);
        let jump = b.slope - a.slope;
        if jump < -1e-9 * a.slope.abs().max(b.slope.abs()).max(1.0) {
            return Err(Error::NonConvex(format!(
                "profile slope drops from {} to {} near t = {}",
                a.slope, b.slope, a.t_to
            )));
        }
        let tc = if jump > 0.0 { (a.intercept - b.intercept) / jump } else { 0.5 * (a.t_to + b.t_from) };
        circles.push(Circle { radius: tc.exp(), mass: jump });
    }
    // let pieces meet at the circles instead of leaving gaps over dropped cells
    for j in 0..circles.len() {
        let tc = circles[j].radius.ln();
        pieces[j].t_to = tc;
        pieces[j + 1].t_from = tc;
    }

    let first = pieces.first().map_or(f64::NAN, |q| q.slope);
    let lastslope = pieces.last().map_or(f64::NAN, |q| q.slope);
    let hypotheses = Hypotheses {
        constant_near_origin: first.abs() <= opts.slope_tol,
        polynomial_slopes: first >= -opts.slope_tol && (lastslope - 1.0).abs() <= opts.slope_tol,
    };
    Ok(Segmentation { pieces, circles, hypotheses })
}
