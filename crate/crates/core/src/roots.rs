//! Zeros of coefficient sequences.
//!
//! [`aberth_roots`] runs a simultaneous Aberth–Ehrlich iteration with every
//! quantity held in [`ExtComplex`], so roots ranging from `1e-300` to
//! `e^{10^5}` share one iteration. Starting points sit on the Newton-polygon
//! circles, which already place each root at roughly the right modulus.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::convex::{lower_envelope, LogPointSet};
use crate::error::{Error, Result};
use crate::series::CoeffSeq;
use crate::wiman::maximal_term_logs;
use crate::xnum::{horner_with_derivative, ExtComplex, ExtScalar};

/// Coefficients of `f'`; `V` is unchanged.
pub fn differentiate(f: &CoeffSeq) -> Result<CoeffSeq> {
    if f.degree() == 0 {
        return Err(Error::ZeroDerivative);
    }
    let c = f.coeffs();
    let d = (1..c.len()).map(|k| c[k].mul_f64(k as f64)).collect();
    CoeffSeq::new(format!("{}'", f.label()), f.n(), f.v(), d, f.is_truncated())
}

/// `(ln radius, count)` per Newton-polygon edge of the points `(k, -ln|a_k|)`.
/// Counts add up to `degree - lowest_index`. Empty for a monomial.
pub fn newton_polygon_radii(f: &CoeffSeq) -> Vec<(f64, usize)> {
    let pts = LogPointSet::from_coeffs_scaled(f, 1.0);
    let env = match lower_envelope(&pts) {
        Ok(e) => e,
        Err(_) => return vec![],
    };
    let bp = env.breakpoints();
    env.slopes()
        .iter()
        .enumerate()
        .map(|(j, &s)| (s, (bp[j + 1] - bp[j]).round() as usize))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AberthOptions {
    pub max_iter: usize,
    /// Accept a root when `ln|f(z)| - ln max_k |a_k z^k|` is at most this.
    pub residual_tol_log: f64,
}

impl Default for AberthOptions {
    fn default() -> Self {
        AberthOptions { max_iter: 200, residual_tol_log: 1e-10f64.ln() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Root {
    pub z: ExtComplex,
    pub modulus_log: f64,
    pub residual_log: f64,
    pub multiplicity_hint: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootSet {
    pub roots: Vec<Root>,
    pub zeros_at_origin: usize,
    pub degree: usize,
    /// `degree - zeros_at_origin`, the number of roots the iteration solved for.
    pub degree_accounted: usize,
    pub residual_tol_log: f64,
    pub converged: bool,
    pub iterations: usize,
}

impl RootSet {
    /// Roots as doubles (overflowing moduli become infinite).
    pub fn points(&self) -> Vec<num_complex::Complex64> {
        self.roots.iter().map(|r| r.z.to_complex()).collect()
    }

    /// Every root meets the residual bound and the count matches the degree.
    pub fn certificate_holds(&self) -> bool {
        self.roots.len() + self.zeros_at_origin == self.degree
            && self.roots.len() == self.degree_accounted
            && self.roots.iter().all(|r| r.residual_log <= self.residual_tol_log)
    }

    /// `re,im,modulus,residual_log,multiplicity_hint`, with a header line.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("re,im,modulus,residual_log,multiplicity_hint\n");
        let zero = (0.0, 0.0, 0.0, f64::NEG_INFINITY, self.zeros_at_origin);
        let rows = self
            .roots
            .iter()
            .map(|r| (r.z.re().to_f64(), r.z.im().to_f64(), r.z.abs().to_f64(), r.residual_log, r.multiplicity_hint))
            .chain(std::iter::repeat_n(zero, self.zeros_at_origin));
        for (re, im, m, res, mult) in rows {
            writeln!(s, "{re:.16e},{im:.16e},{m:.16e},{res:.16e},{mult}").unwrap();
        }
        s
    }
}

fn residual_log(coeffs: &[ExtComplex], logs: &[f64], z: ExtComplex) -> f64 {
    let (p, _) = horner_with_derivative(coeffs, z);
    match (p.log_abs(), z.log_abs()) {
        (Err(_), _) => f64::NEG_INFINITY,
        (Ok(lp), Ok(lz)) => lp - maximal_term_logs(logs, lz).0,
        (Ok(lp), Err(_)) => lp - logs[0],
    }
}

fn initial_points(f: &CoeffSeq) -> Vec<ExtComplex> {
    let mut z = Vec::with_capacity(f.degree());
    for (s, count) in newton_polygon_radii(f) {
        for l in 0..count {
            let arg = std::f64::consts::TAU * l as f64 / count as f64 + 0.5;
            z.push(ExtComplex::from_polar_log(s, arg));
        }
    }
    z
}

/// Indices grouped by `|z_i - z_j| <= rel * max(|z_i|, |z_j|)`, transitively.
fn clusters(z: &[ExtComplex], rel: f64) -> Vec<usize> {
    let n = z.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    let tol = ExtScalar::from_f64(rel);
    for i in 0..n {
        for j in i + 1..n {
            let scale = std::cmp::max_by(z[i].abs(), z[j].abs(), |a, b| a.cmp_abs(b));
            if (z[i] - z[j]).abs().cmp_abs(&(scale * tol)).is_le() {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let roots: Vec<usize> = (0..n).map(|i| find(&mut parent, i)).collect();
    let mut size = vec![0usize; n];
    for &r in &roots {
        size[r] += 1;
    }
    roots.iter().map(|&r| size[r]).collect()
}

/// Relative distance at which returned roots count as one cluster.
pub const CLUSTER_RADIUS: f64 = 1e-6;

/// All zeros of `f`, trailing zero coefficients deflated as exact zeros.
///
/// Iteration continues past the residual threshold until each correction is
/// at rounding level (or has stalled for a while), which lets clustered roots
/// settle close to the true multiple root rather than stop at the first point
/// where the residual is small enough.
pub fn aberth_roots(f: &CoeffSeq, opts: AberthOptions) -> Result<RootSet> {
    if f.degree() == 0 {
        return Err(Error::InvalidArgument("constant has no roots".into()));
    }
    let low = f.lowest_index();
    let coeffs: Vec<ExtComplex> = f.coeffs()[low..].to_vec();
    let q = CoeffSeq::new(f.label(), f.n(), f.v(), coeffs.clone(), f.is_truncated())?;
    let logs = q.log_magnitudes();
    let n = q.degree();

    let mut z = initial_points(&q);
    debug_assert_eq!(z.len(), n);
    let mut done = vec![n == 0; n];
    let mut ok_streak = vec![0usize; n];
    let mut iterations = 0;
    let tiny = ExtScalar::from_f64(1e-14);
    const STALL: usize = 40;

    while iterations < opts.max_iter && done.iter().any(|d| !d) {
        iterations += 1;
        let mut step = vec![ExtComplex::ZERO; n];
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (p, dp) = horner_with_derivative(&coeffs, z[i]);
            if p.is_zero() {
                done[i] = true;
                continue;
            }
            let newton = match p.checked_div(&dp) {
                Ok(w) => w,
                Err(_) => {
                    // stationary point of f: nudge off it
                    let base = if z[i].is_zero() { ExtComplex::ONE } else { z[i] };
                    step[i] = base.mul_f64(1e-3);
                    continue;
                }
            };
            let mut sum = ExtComplex::ZERO;
            for j in 0..n {
                if j != i {
                    if let Ok(r) = (z[i] - z[j]).recip() {
                        sum = sum + r;
                    }
                }
            }
            let denom = ExtComplex::ONE - newton * sum;
            step[i] = newton.checked_div(&denom).unwrap_or(newton);
        }
        for i in 0..n {
            if done[i] {
                continue;
            }
            z[i] = z[i] - step[i];
            let small = step[i].abs().cmp_abs(&(z[i].abs() * tiny)).is_le();
            if residual_log(&coeffs, &logs, z[i]) <= opts.residual_tol_log {
                ok_streak[i] += 1;
            } else {
                ok_streak[i] = 0;
            }
            if (small && ok_streak[i] > 0) || ok_streak[i] >= STALL {
                done[i] = true;
            }
        }
    }

    let hints = clusters(&z, CLUSTER_RADIUS);
    let roots: Vec<Root> = z
        .iter()
        .zip(hints)
        .map(|(&zi, h)| Root {
            z: zi,
            modulus_log: zi.log_abs().unwrap_or(f64::NEG_INFINITY),
            residual_log: residual_log(&coeffs, &logs, zi),
            multiplicity_hint: h,
        })
        .collect();
    let converged = roots.iter().all(|r| r.residual_log <= opts.residual_tol_log);
    Ok(RootSet {
        roots,
        zeros_at_origin: low,
        degree: f.degree(),
        degree_accounted: n,
        residual_tol_log: opts.residual_tol_log,
        converged,
        iterations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::geometric_partial_sum;
    use num_complex::Complex64;

    fn real(label: &str, c: &[f64]) -> CoeffSeq {
        CoeffSeq::from_f64(label, (c.len() - 1) as u64, c.len().max(2) as f64 - 1.0, c).unwrap()
    }

    #[test]
    fn derivative_examples() {
        let d = differentiate(&real("q", &[1.0, 1.0, 1.0])).unwrap();
        assert_eq!(d.coeffs(), &[ExtComplex::from_f64(1.0), ExtComplex::from_f64(2.0)]);
        assert_eq!(d.v(), 2.0);
        let d = differentiate(&real("t", &[2.0, -3.0, 0.0, 1.0])).unwrap();
        assert_eq!(d.coeffs(), &[ExtComplex::from_f64(-3.0), ExtComplex::ZERO, ExtComplex::from_f64(3.0)]);
        assert_eq!(differentiate(&real("c", &[4.0])).unwrap_err(), Error::ZeroDerivative);
        let mut c = vec![0.0; 8];
        c[0] = -1.0;
        c[7] = 1.0;
        let d = differentiate(&real("u", &c)).unwrap();
        let rs = aberth_roots(&d, AberthOptions::default()).unwrap();
        assert_eq!(rs.zeros_at_origin, 6);
        assert!(rs.roots.is_empty());
    }

    #[test]
    fn newton_radii_examples() {
        let r = newton_polygon_radii(&real("q", &[1.0, 1.0, 0.01]));
        assert_eq!(r.len(), 2);
        assert_eq!(r[0], (0.0, 1));
        assert!((r[1].0 - 100f64.ln()).abs() < 1e-12 && r[1].1 == 1);
        let mut c = vec![0.0; 9];
        c[0] = -1.0;
        c[8] = 1.0;
        assert_eq!(newton_polygon_radii(&real("u", &c)), vec![(0.0, 8)]);
        let h = crate::series::hardy(0.5, 6).unwrap();
        let r = newton_polygon_radii(&h);
        assert_eq!(r.len(), 6);
        for (k, &(s, c)) in r.iter().enumerate() {
            assert_eq!(c, 1);
            assert!((s - 2f64.powi(k as i32) * 2f64.ln()).abs() < 1e-9);
        }
        assert!(newton_polygon_radii(&real("m", &[0.0, 0.0, 1.0])).is_empty());
    }

    #[test]
    fn plus_minus_i() {
        let rs = aberth_roots(&real("q", &[1.0, 0.0, 1.0]), AberthOptions::default()).unwrap();
        assert!(rs.converged && rs.certificate_holds());
        let mut pts = rs.points();
        pts.sort_by(|a, b| a.im.total_cmp(&b.im));
        assert!((pts[0] - Complex64::new(0.0, -1.0)).norm() < 1e-15);
        assert!((pts[1] - Complex64::new(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn double_root_cluster() {
        let rs = aberth_roots(&real("t", &[2.0, -3.0, 0.0, 1.0]), AberthOptions::default()).unwrap();
        assert!(rs.converged);
        let near_one: Vec<&Root> = rs.roots.iter().filter(|r| (r.z.to_complex() - 1.0).norm() < 1e-6).collect();
        assert_eq!(near_one.len(), 2);
        assert!(near_one.iter().all(|r| r.multiplicity_hint == 2));
        let other = rs.roots.iter().find(|r| r.multiplicity_hint == 1).unwrap();
        assert!((other.z.to_complex() + 2.0).norm() < 1e-12);
    }

    #[test]
    fn geometric_s7() {
        let rs = aberth_roots(&geometric_partial_sum(7).unwrap(), AberthOptions::default()).unwrap();
        assert!(rs.certificate_holds());
        let mut args: Vec<f64> = rs.points().iter().map(|z| z.arg().rem_euclid(std::f64::consts::TAU)).collect();
        args.sort_by(f64::total_cmp);
        for (j, a) in args.iter().enumerate() {
            let want = std::f64::consts::TAU * (j + 1) as f64 / 8.0;
            assert!((a - want).abs() < 1e-10);
        }
        for z in rs.points() {
            assert!((z.norm() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn trailing_zeros_deflate() {
        let rs = aberth_roots(&real("z", &[0.0, 0.0, -1.0, 1.0]), AberthOptions::default()).unwrap();
        assert_eq!(rs.zeros_at_origin, 2);
        assert_eq!(rs.degree_accounted, 1);
        assert!((rs.points()[0] - 1.0).norm() < 1e-15);
        let csv = rs.to_csv();
        assert_eq!(csv.lines().count(), 4);
        assert!(csv.starts_with("re,im,modulus,residual_log,multiplicity_hint\n"));
    }

    #[test]
    fn wide_range_roots() {
        // roots 1e-200, 1, 1e200 do not fit one double-precision scale
        let zs = [Complex64::new(1e-200, 0.0), Complex64::new(1.0, 0.0), Complex64::new(1e200, 0.0)];
        let f = crate::series::from_roots("w", &zs).unwrap();
        let rs = aberth_roots(&f, AberthOptions::default()).unwrap();
        assert!(rs.certificate_holds());
        let mut m: Vec<f64> = rs.roots.iter().map(|r| r.modulus_log).collect();
        m.sort_by(f64::total_cmp);
        for (got, want) in m.iter().zip([-200.0 * 10f64.ln(), 0.0, 200.0 * 10f64.ln()]) {
            assert!((got - want).abs() < 1e-9, "{got} vs {want}");
        }
    }
}
