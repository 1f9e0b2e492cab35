//! End-to-end checks built from the other modules: coefficient/modulus
//! duality, the boundary-window coefficient criterion for equidistribution
//! on the unit circle, predicted circles against actual zeros, and zeros
//! against critical points.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::convex::{legendre, lower_envelope, LogPointSet, PiecewiseConvex};
use crate::error::{Error, Result};
use crate::measures::{angular_discrepancy, empirical, radial_stats, wasserstein1, RadialStats};
use crate::roots::{aberth_roots, differentiate, newton_polygon_radii, AberthOptions, RootSet};
use crate::series::CoeffSeq;
use crate::wiman::{detect_piecewise_harmonic_with, linear_grid, phi_profile, DetectOptions, Profile, Segmentation};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Theorem1Report {
    pub schema_version: u32,
    pub psi: PiecewiseConvex,
    pub legendre_psi: PiecewiseConvex,
    pub profile: Profile,
    /// `max_t |L(psi)(t) - lower(t)|`
    pub duality_residual: f64,
    /// `max_t (upper(t) - lower(t))`
    pub sandwich_gap: f64,
}

pub fn theorem1_check(f: &CoeffSeq, t_grid: &[f64]) -> Result<Theorem1Report> {
    let psi = lower_envelope(&LogPointSet::from_coeffs(f))?;
    let legendre_psi = legendre(&psi);
    let profile = phi_profile(f, t_grid)?;
    let duality_residual = t_grid
        .iter()
        .zip(&profile.lower)
        .map(|(&t, &lo)| (legendre_psi.eval(t) - lo).abs())
        .fold(0.0, f64::max);
    let sandwich_gap = profile.gap();
    Ok(Theorem1Report { schema_version: SCHEMA_VERSION, psi, legendre_psi, profile, duality_residual, sandwich_gap })
}

/// Grid over the Newton-slope range widened by 1 on each side, spacing about
/// `1/(4V)`, between 201 and 2001 points.
pub fn default_t_grid(f: &CoeffSeq) -> Result<Vec<f64>> {
    let radii = newton_polygon_radii(f);
    let (lo, hi) = radii
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &(s, _)| (a.min(s), b.max(s)));
    let (lo, hi) = if radii.is_empty() { (0.0, 0.0) } else { (lo, hi) };
    let (a, b) = (lo - 1.0, hi + 1.0);
    let n = (((b - a) * 4.0 * f.v()).ceil() as usize + 1).clamp(201, 2001);
    linear_grid(a, b, n)
}

/// The boundary-window criterion for one `(n, eps)`, `n` the degree:
/// `max_k ln|a_k| - max_{k <= eps n or k >= (1 - eps) n} ln|a_k| <= eps n`.
/// An all-zero window fails.
pub fn jentzsch_condition(f: &CoeffSeq, eps: f64) -> Result<bool> {
    if !(eps > 0.0 && eps < 0.5) {
        return Err(Error::InvalidArgument(format!("eps must lie in (0, 1/2), got {eps}")));
    }
    let n = f.degree() as f64;
    let logs = f.log_magnitudes();
    let all = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let slack = 1e-9;
    let window = logs
        .iter()
        .enumerate()
        .filter(|(k, _)| {
            let k = *k as f64;
            k <= eps * n + slack || k >= (1.0 - eps) * n - slack
        })
        .map(|(_, &l)| l)
        .fold(f64::NEG_INFINITY, f64::max);
    if window == f64::NEG_INFINITY {
        return Ok(false);
    }
    Ok(all - window <= eps * n)
}

#[derive(Clone, Debug, PartialEq)]
pub struct UniformityOptions {
    /// Defaults to [`default_t_grid`].
    pub t_grid: Option<Vec<f64>>,
    pub detect: DetectOptions,
    /// Half-width of the annulus `radius (1 +- delta)` paired with a circle.
    pub delta: f64,
    pub aberth: AberthOptions,
}

impl Default for UniformityOptions {
    fn default() -> Self {
        UniformityOptions {
            t_grid: None,
            detect: DetectOptions { gap_tol: 0.1, slope_tol: 0.1 },
            delta: 0.1,
            aberth: AberthOptions::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircleCheck {
    pub radius: f64,
    /// `None` when the radius was supplied rather than detected.
    pub predicted_mass: Option<f64>,
    pub measured_mass: f64,
    pub atoms_in_annulus: usize,
    /// Discrepancy of the atoms inside the annulus about the origin.
    pub discrepancy: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UniformityReport {
    pub schema_version: u32,
    pub t_min: f64,
    pub t_max: f64,
    pub t_points: usize,
    pub profile_gap: f64,
    pub segmentation: Option<Segmentation>,
    /// Why no segmentation is reported, if it is absent.
    pub detector_status: String,
    pub circles: Vec<CircleCheck>,
    pub root_count: usize,
    pub zeros_at_origin: usize,
    pub discrepancy_about_origin: Option<f64>,
    pub radial: RadialStats,
    #[serde(skip)]
    pub roots: Option<RootSet>,
}

/// Detected circles paired with the measured mass and angular spread of the
/// zeros near each. `radius_guess` replaces the detected circles.
pub fn uniformity_report(f: &CoeffSeq, radius_guess: Option<f64>, opts: &UniformityOptions) -> Result<UniformityReport> {
    let t_grid = match &opts.t_grid {
        Some(g) => g.clone(),
        None => default_t_grid(f)?,
    };
    let profile = phi_profile(f, &t_grid)?;
    let (segmentation, detector_status) = match detect_piecewise_harmonic_with(&profile, opts.detect) {
        Ok(s) => (Some(s), "detected".to_string()),
        Err(e) => (None, e.to_string()),
    };
    let roots = aberth_roots(f, opts.aberth)?;
    if !roots.converged {
        return Err(Error::Unconverged);
    }
    let mu = empirical(&roots)?;
    let origin = Complex64::new(0.0, 0.0);

    let targets: Vec<(f64, Option<f64>)> = match (radius_guess, &segmentation) {
        (Some(r), _) => vec![(r, None)],
        (None, Some(s)) => s.circles.iter().map(|c| (c.radius, Some(c.mass))).collect(),
        (None, None) => vec![],
    };
    let circles = targets
        .into_iter()
        .map(|(radius, predicted_mass)| {
            let sub = mu.restrict_annulus(origin, radius * (1.0 - opts.delta), radius * (1.0 + opts.delta));
            CircleCheck {
                radius,
                predicted_mass,
                measured_mass: sub.total_mass(),
                atoms_in_annulus: sub.len(),
                discrepancy: if sub.is_empty() { None } else { angular_discrepancy(&sub, origin).ok() },
            }
        })
        .collect();

    Ok(UniformityReport {
        schema_version: SCHEMA_VERSION,
        t_min: t_grid[0],
        t_max: *t_grid.last().unwrap(),
        t_points: t_grid.len(),
        profile_gap: profile.gap(),
        segmentation,
        detector_status,
        circles,
        root_count: roots.roots.len(),
        zeros_at_origin: roots.zeros_at_origin,
        discrepancy_about_origin: angular_discrepancy(&mu, origin).ok(),
        radial: radial_stats(&mu, origin)?,
        roots: Some(roots),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstancyFlag {
    pub re: f64,
    pub im: f64,
    /// `(ln|f'| - ln|f|) / V` at the point.
    pub gap: f64,
    /// Spread of `ln|f| / V` over a small circle around the point.
    pub u_spread: f64,
    pub constant: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DerivativeReport {
    pub schema_version: u32,
    pub w1_zero_vs_crit: f64,
    /// Largest `(ln|f'| - ln|f|)/V` over grid points away from the zeros;
    /// `None` when every grid point is excluded.
    pub pointwise_gap: Option<f64>,
    pub exclusion_radius: f64,
    /// Grid points where `ln|f'|` sits clearly below `ln|f|`, with a check of
    /// whether `ln|f|/V` is flat nearby.
    pub constancy_flags: Vec<ConstancyFlag>,
    #[serde(skip)]
    pub zeros: Option<RootSet>,
    #[serde(skip)]
    pub critical_points: Option<RootSet>,
}

/// Thresholds for the constancy flags.
pub const FLAG_GAP: f64 = -0.1;
pub const FLAG_SPREAD: f64 = 0.05;

/// Square grid of `side * side` points covering `[-half, half]^2`.
pub fn square_grid(half: f64, side: usize) -> Vec<Complex64> {
    let h = if side > 1 { 2.0 * half / (side - 1) as f64 } else { 0.0 };
    (0..side)
        .flat_map(|i| (0..side).map(move |j| Complex64::new(-half + h * j as f64, -half + h * i as f64)))
        .collect()
}

fn log_abs_at(f: &CoeffSeq, z: Complex64) -> f64 {
    f.eval_complex(z).log_abs().unwrap_or(f64::NEG_INFINITY)
}

/// Zeros of `f` against zeros of `f'`, and `ln|f'|` against `ln|f|` on a grid.
///
/// `exclusion_radius` defaults to `0.05` times the largest zero modulus.
pub fn derivative_comparison(
    f: &CoeffSeq,
    sample_grid: &[Complex64],
    exclusion_radius: Option<f64>,
    aberth: AberthOptions,
) -> Result<DerivativeReport> {
    if f.degree() < 2 {
        return Err(Error::InvalidArgument("derivative comparison needs degree >= 2".into()));
    }
    let df = differentiate(f)?;
    let zeros = aberth_roots(f, aberth)?;
    let crit = aberth_roots(&df, aberth)?;
    if !zeros.converged || !crit.converged {
        return Err(Error::Unconverged);
    }
    let w1 = wasserstein1(&empirical(&zeros)?, &empirical(&crit)?)?;

    let zpts = zeros.points();
    let scale = zpts.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let excl = exclusion_radius.unwrap_or(0.05 * scale);
    let v = f.v();
    let probe = if excl > 0.0 { excl } else { 0.05 * scale.max(1.0) };

    let mut gap_max: Option<f64> = None;
    let mut flags = Vec::new();
    for &z in sample_grid {
        if zpts.iter().any(|&r| (r - z).norm() < excl) {
            continue;
        }
        let u = log_abs_at(f, z);
        let g = (log_abs_at(&df, z) - u) / v;
        if !g.is_finite() {
            continue;
        }
        gap_max = Some(gap_max.map_or(g, |m: f64| m.max(g)));
        if g < FLAG_GAP {
            let ring: Vec<f64> = (0..8)
                .map(|k| log_abs_at(f, z + Complex64::from_polar(probe, std::f64::consts::TAU * k as f64 / 8.0)) / v)
                .chain(std::iter::once(u / v))
                .collect();
            let hi = ring.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let lo = ring.iter().copied().fold(f64::INFINITY, f64::min);
            let spread = hi - lo;
            flags.push(ConstancyFlag { re: z.re, im: z.im, gap: g, u_spread: spread, constant: spread <= FLAG_SPREAD });
        }
    }
    Ok(DerivativeReport {
        schema_version: SCHEMA_VERSION,
        w1_zero_vs_crit: w1,
        pointwise_gap: gap_max,
        exclusion_radius: excl,
        constancy_flags: flags,
        zeros: Some(zeros),
        critical_points: Some(crit),
    })
}
