//! Convex piecewise-linear functions on the line, the lower convex envelope
//! of a point set, and the exact Legendre transform.
//!
//! A [`PiecewiseConvex`] is finite on a closed interval given by its
//! breakpoints, optionally extended by a half-infinite linear piece on either
//! side, and `+inf` elsewhere. Values at finite endpoints are the limits along
//! the graph, i.e. functions are stored lower semi-continuous.
//!
//! Segment slopes are stored next to the breakpoints. The conjugate of a
//! piecewise-linear function swaps the two lists (breakpoints of `L(f)` are
//! the slopes of `f`, segment slopes of `L(f)` are the breakpoints of `f`), so
//! keeping both lets `legendre` stay closed-form and `L(L(f))` reproduce `f`
//! up to one rounding per value.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::series::CoeffSeq;

/// Points `(x, y)` with strictly increasing `x` and finite `y`.
#[derive(Clone, Debug, PartialEq)]
pub struct LogPointSet {
    points: Vec<(f64, f64)>,
}

impl LogPointSet {
    /// Sorts by `x`, keeps the smaller `y` on ties, drops `y = +inf`.
    pub fn new(mut points: Vec<(f64, f64)>) -> Result<Self> {
        if points.iter().any(|&(x, y)| !x.is_finite() || y.is_nan() || y == f64::NEG_INFINITY) {
            return Err(Error::InvalidArgument("point set needs finite x and y in (-inf, +inf]".into()));
        }
        points.retain(|p| p.1.is_finite());
        points.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
        points.dedup_by(|later, earlier| later.0 == earlier.0);
        Ok(LogPointSet { points })
    }

    /// `(k / scale, -ln|a_k| / scale)` over the nonzero coefficients.
    pub fn from_coeffs_scaled(f: &CoeffSeq, scale: f64) -> Self {
        let points = f
            .log_magnitudes()
            .iter()
            .enumerate()
            .filter(|(_, l)| l.is_finite())
            .map(|(k, &l)| (k as f64 / scale, -l / scale))
            .collect();
        LogPointSet { points }
    }

    /// The argument points of `psi_n`: `(k / V, -ln|a_k| / V)`.
    pub fn from_coeffs(f: &CoeffSeq) -> Self {
        Self::from_coeffs_scaled(f, f.v())
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PiecewiseConvex {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
    /// Low-order parts of `values`: conjugate values are formed in
    /// double-double arithmetic so that applying `legendre` twice cancels
    /// the large `t * x` products exactly.
    values_lo: Vec<f64>,
    slopes: Vec<f64>,
    left_slope: Option<f64>,
    right_slope: Option<f64>,
}

impl PiecewiseConvex {
    /// Builds from vertices; checks ordering and convexity.
    pub fn from_vertices(
        breakpoints: Vec<f64>,
        values: Vec<f64>,
        left_slope: Option<f64>,
        right_slope: Option<f64>,
    ) -> Result<Self> {
        if breakpoints.is_empty() || breakpoints.len() != values.len() {
            return Err(Error::InvalidArgument("need equally many (>= 1) breakpoints and values".into()));
        }
        if breakpoints.iter().chain(&values).any(|v| !v.is_finite())
            || left_slope.is_some_and(|s| !s.is_finite())
            || right_slope.is_some_and(|s| !s.is_finite())
        {
            return Err(Error::InvalidArgument("non-finite breakpoint, value or slope".into()));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument("breakpoints must be strictly increasing".into()));
        }
        let slopes: Vec<f64> = (0..breakpoints.len() - 1)
            .map(|j| (values[j + 1] - values[j]) / (breakpoints[j + 1] - breakpoints[j]))
            .collect();
        let mut all = Vec::with_capacity(slopes.len() + 2);
        all.extend(left_slope);
        all.extend(&slopes);
        all.extend(right_slope);
        for w in all.windows(2) {
            let tol = 1e-12 * w[0].abs().max(w[1].abs()).max(1.0);
            if w[1] < w[0] - tol {
                return Err(Error::NonConvex(format!("slope {} followed by {}", w[0], w[1])));
            }
        }
        let values_lo = vec![0.0; values.len()];
        Ok(PiecewiseConvex { breakpoints, values, values_lo, slopes, left_slope, right_slope })
    }

    /// `max(0, t)` on the whole line.
    pub fn positive_part() -> Self {
        PiecewiseConvex {
            breakpoints: vec![0.0],
            values: vec![0.0],
            values_lo: vec![0.0],
            slopes: vec![],
            left_slope: Some(0.0),
            right_slope: Some(1.0),
        }
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Slopes of the finite segments between consecutive breakpoints.
    pub fn slopes(&self) -> &[f64] {
        &self.slopes
    }

    pub fn left_slope(&self) -> Option<f64> {
        self.left_slope
    }

    pub fn right_slope(&self) -> Option<f64> {
        self.right_slope
    }

    /// Interval where the function is finite (endpoints may be infinite).
    pub fn domain(&self) -> (f64, f64) {
        let lo = if self.left_slope.is_some() { f64::NEG_INFINITY } else { self.breakpoints[0] };
        let hi = if self.right_slope.is_some() { f64::INFINITY } else { *self.breakpoints.last().unwrap() };
        (lo, hi)
    }

    /// Every slope in order: left piece, segments, right piece.
    pub fn all_slopes(&self) -> Vec<f64> {
        let mut v = Vec::with_capacity(self.slopes.len() + 2);
        v.extend(self.left_slope);
        v.extend(&self.slopes);
        v.extend(self.right_slope);
        v
    }

    /// Value at `x`, `+inf` outside the domain.
    pub fn eval(&self, x: f64) -> f64 {
        let bp = &self.breakpoints;
        let first = bp[0];
        let last = *bp.last().unwrap();
        if x < first {
            return match self.left_slope {
                Some(s) => self.values[0] + s * (x - first),
                None => f64::INFINITY,
            };
        }
        if x > last {
            return match self.right_slope {
                Some(s) => self.values[bp.len() - 1] + s * (x - last),
                None => f64::INFINITY,
            };
        }
        // index of the last breakpoint <= x
        let j = bp.partition_point(|&b| b <= x) - 1;
        if j == bp.len() - 1 {
            return self.values[j];
        }
        self.values[j] + self.slopes[j] * (x - bp[j])
    }
}

#[derive(Serialize, Deserialize)]
struct PiecewiseRepr {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    left_slope_to_minus_inf: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    right_slope_to_plus_inf: Option<f64>,
}

impl Serialize for PiecewiseConvex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PiecewiseRepr {
            breakpoints: self.breakpoints.clone(),
            values: self.values.clone(),
            left_slope_to_minus_inf: self.left_slope,
            right_slope_to_plus_inf: self.right_slope,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PiecewiseConvex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = PiecewiseRepr::deserialize(d)?;
        PiecewiseConvex::from_vertices(r.breakpoints, r.values, r.left_slope_to_minus_inf, r.right_slope_to_plus_inf)
            .map_err(D::Error::custom)
    }
}

/// Greatest convex function below the points, finite on `[x_min, x_max]`.
///
/// Single lower-hull sweep over the x-sorted points. A vertex is dropped
/// when the computed slope into it is not strictly below the slope out of it,
/// so collinear points vanish and the stored slopes strictly increase.
pub fn lower_envelope(pts: &LogPointSet) -> Result<PiecewiseConvex> {
    let p = pts.points();
    if p.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let slope = |a: (f64, f64), b: (f64, f64)| (b.1 - a.1) / (b.0 - a.0);
    let mut hull: Vec<(f64, f64)> = Vec::with_capacity(p.len());
    for &q in p {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            if slope(a, b) >= slope(b, q) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(q);
    }
    let slopes = hull.windows(2).map(|w| slope(w[0], w[1])).collect();
    Ok(PiecewiseConvex {
        breakpoints: hull.iter().map(|q| q.0).collect(),
        values: hull.iter().map(|q| q.1).collect(),
        values_lo: vec![0.0; hull.len()],
        slopes,
        left_slope: None,
        right_slope: None,
    })
}

/// `a * b` as an unevaluated sum `hi + lo`.
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// `(a_hi + a_lo) - (b_hi + b_lo)` in double-double.
fn dd_sub(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    let s = a.0 - b.0;
    let bb = s - a.0;
    let err = (a.0 - (s - bb)) + (-b.0 - bb);
    let lo = err + a.1 - b.1;
    let hi = s + lo;
    (hi, lo - (hi - s))
}

/// Exact Legendre transform `L(f)(t) = sup_x (t x - f(x))`.
pub fn legendre(f: &PiecewiseConvex) -> PiecewiseConvex {
    let xs = &f.breakpoints;
    let m = xs.len() - 1;
    // t x_j - f(x_j), carried in double-double
    let conj = |t: f64, j: usize| dd_sub(two_prod(t, xs[j]), (f.values[j], f.values_lo[j]));

    // (t, value) pairs and the slope of the piece to the right of each t
    let mut pts: Vec<(f64, (f64, f64))> = Vec::with_capacity(m + 2);
    let mut seg: Vec<f64> = Vec::with_capacity(m + 1);
    let mut push = |t: f64, v: (f64, f64), next_slope: Option<f64>| {
        if pts.last().is_some_and(|&(last, _)| t <= last) {
            // repeated slope of f: zero-length piece of L(f)
            seg.pop();
        } else {
            pts.push((t, v));
        }
        seg.extend(next_slope);
    };

    if let Some(l) = f.left_slope {
        push(l, conj(l, 0), Some(xs[0]));
    }
    for j in 0..m {
        let s = f.slopes[j];
        push(s, conj(s, j + 1), Some(xs[j + 1]));
    }
    if let Some(r) = f.right_slope {
        push(r, conj(r, m), None);
    } else {
        // the last piece is the right half-line, not a segment
        seg.pop();
    }
    let left_slope = if f.left_slope.is_none() { Some(xs[0]) } else { None };
    let right_slope = if f.right_slope.is_none() { Some(xs[m]) } else { None };

    if pts.is_empty() {
        // f is a single point: L(f) is the line t -> t x0 - y0
        let v = conj(0.0, 0);
        return PiecewiseConvex {
            breakpoints: vec![0.0],
            values: vec![v.0],
            values_lo: vec![v.1],
            slopes: vec![],
            left_slope,
            right_slope,
        };
    }
    debug_assert_eq!(seg.len(), pts.len() - 1);
    PiecewiseConvex {
        breakpoints: pts.iter().map(|p| p.0).collect(),
        values: pts.iter().map(|p| p.1 .0).collect(),
        values_lo: pts.iter().map(|p| p.1 .1).collect(),
        slopes: seg,
        left_slope,
        right_slope,
    }
}

/// `sup_x (t x - f(x))` by scanning the vertices; `+inf` where unbounded.
pub fn conjugate_at(f: &PiecewiseConvex, t: f64) -> f64 {
    if f.left_slope.is_some_and(|l| t < l) || f.right_slope.is_some_and(|r| t > r) {
        return f64::INFINITY;
    }
    f.breakpoints
        .iter()
        .zip(&f.values)
        .map(|(&x, &y)| t * x - y)
        .fold(f64::NEG_INFINITY, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env(points: &[(f64, f64)]) -> PiecewiseConvex {
        lower_envelope(&LogPointSet::new(points.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn middle_point_above_chord() {
        let f = env(&[(0.0, 0.0), (0.5, 1.0), (1.0, 0.0)]);
        assert_eq!(f.breakpoints(), &[0.0, 1.0]);
        assert_eq!(f.eval(0.5), 0.0);
    }

    #[test]
    fn collinear_points() {
        let f = env(&[(0.0, 0.0), (1.0, 1.0), (2.0, 2.0)]);
        assert_eq!(f.breakpoints(), &[0.0, 2.0]);
        assert_eq!(f.eval(1.5), 1.5);
    }

    #[test]
    fn ties_keep_smaller_y() {
        let f = env(&[(0.0, 3.0), (0.0, 1.0), (1.0, 0.0)]);
        assert_eq!(f.values(), &[1.0, 0.0]);
    }

    #[test]
    fn geometric_partial_sum_envelope() {
        let s5 = crate::series::geometric_partial_sum(5).unwrap();
        let f = lower_envelope(&LogPointSet::from_coeffs(&s5)).unwrap();
        assert_eq!(f.breakpoints(), &[0.0, 1.0]);
        assert_eq!(f.eval(0.5), 0.0);
        assert_eq!(f.eval(1.1), f64::INFINITY);
        assert_eq!(f.eval(-0.1), f64::INFINITY);
    }

    #[test]
    fn empty_and_bad_input() {
        assert_eq!(lower_envelope(&LogPointSet::new(vec![]).unwrap()).unwrap_err(), Error::EmptyPointSet);
        assert!(LogPointSet::new(vec![(f64::NAN, 0.0)]).is_err());
        // +inf values are dropped
        let p = LogPointSet::new(vec![(0.0, f64::INFINITY), (1.0, 2.0)]).unwrap();
        assert_eq!(p.len(), 1);
    }

    #[test]
    fn positive_part_and_zero_on_unit_interval() {
        let tp = PiecewiseConvex::positive_part();
        assert_eq!(tp.eval(-2.0), 0.0);
        assert_eq!(tp.eval(3.0), 3.0);
        let phi = legendre(&tp);
        assert_eq!(phi.breakpoints(), &[0.0, 1.0]);
        assert_eq!(phi.values(), &[0.0, 0.0]);
        assert_eq!(phi.domain(), (0.0, 1.0));
        assert_eq!(phi.eval(1.5), f64::INFINITY);
        let back = legendre(&phi);
        assert_eq!(back, tp);
    }

    #[test]
    fn single_point_conjugate_is_a_line() {
        let f = env(&[(1.0, 0.0)]);
        let g = legendre(&f);
        for t in [-3.0, 0.0, 2.5] {
            assert_eq!(g.eval(t), t);
        }
        let back = legendre(&g);
        assert_eq!(back.breakpoints(), &[1.0]);
        assert_eq!(back.values(), &[0.0]);
        assert_eq!(back.domain(), (1.0, 1.0));
    }

    #[test]
    fn quadratic_is_nearly_self_conjugate() {
        let h = 0.1;
        let xs: Vec<f64> = (0..61).map(|i| -3.0 + h * i as f64).collect();
        let pts = xs.iter().map(|&x| (x, x * x / 2.0)).collect();
        let f = lower_envelope(&LogPointSet::new(pts).unwrap()).unwrap();
        let g = legendre(&f);
        for i in 0..=600 {
            let t = -3.0 + 0.01 * i as f64;
            let err = (g.eval(t) - t * t / 2.0).abs();
            assert!(err <= h * h / 8.0 + 1e-12, "t={t} err={err}");
        }
    }

    #[test]
    fn eval_matches_vertex_scan() {
        let f = env(&[(0.0, 1.0), (0.3, -0.2), (0.7, 0.1), (1.0, 2.0)]);
        let g = legendre(&f);
        for i in -50..=50 {
            let t = i as f64 * 0.2;
            assert!((g.eval(t) - conjugate_at(&f, t)).abs() < 1e-12);
        }
    }

    #[test]
    fn from_vertices_rejects_concave() {
        let r = PiecewiseConvex::from_vertices(vec![0.0, 1.0, 2.0], vec![0.0, 1.0, 1.0], None, None);
        assert!(matches!(r, Err(Error::NonConvex(_))));
        let r = PiecewiseConvex::from_vertices(vec![0.0], vec![0.0], Some(1.0), Some(0.0));
        assert!(matches!(r, Err(Error::NonConvex(_))));
    }

    #[test]
    fn json_shape() {
        let s = serde_json::to_string(&PiecewiseConvex::positive_part()).unwrap();
        assert_eq!(s, r#"{"breakpoints":[0.0],"values":[0.0],"left_slope_to_minus_inf":0.0,"right_slope_to_plus_inf":1.0}"#);
        let back: PiecewiseConvex = serde_json::from_str(&s).unwrap();
        assert_eq!(back, PiecewiseConvex::positive_part());
    }
}
