//! Root finder against a companion-matrix oracle and its structural invariants.

mod common;

use nalgebra::DMatrix;
use proptest::prelude::*;
use zerodist::roots::{aberth_roots, AberthOptions};
use zerodist::series::{
    hardy, hardy_auto_k, rescale, ruelle_auto_k, ruelle_zeta, CoeffSeq, DEFAULT_TAIL_LOG_TOL,
    DEFAULT_TRUNCATION_RADIUS,
};
use zerodist::Complex64;

/// Largest distance from a point of `a` to its nearest point of `b`, relative
/// to `max(|point|, 1)`.
fn directed_gap(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .map(|p| b.iter().map(|q| (p - q).norm()).fold(f64::INFINITY, f64::min) / p.norm().max(1.0))
        .fold(0.0, f64::max)
}

fn hausdorff(a: &[Complex64], b: &[Complex64]) -> f64 {
    directed_gap(a, b).max(directed_gap(b, a))
}

/// Eigenvalues of the companion matrix of `c[0] + ... + c[d] z^d`.
fn companion_roots(c: &[f64]) -> Vec<Complex64> {
    let d = c.len() - 1;
    let mut m = DMatrix::<f64>::zeros(d, d);
    for i in 1..d {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..d {
        m[(i, d - 1)] = -c[i] / c[d];
    }
    m.complex_eigenvalues().iter().copied().collect()
}

fn solve(f: &CoeffSeq) -> Vec<Complex64> {
    let rs = aberth_roots(f, AberthOptions::default()).unwrap();
    assert!(rs.certificate_holds(), "certificate failed for {}", f.label());
    let mut pts = rs.points();
    pts.extend(std::iter::repeat_n(Complex64::new(0.0, 0.0), rs.zeros_at_origin));
    pts
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn agrees_with_companion_eigenvalues(seed in any::<u64>(), d in 1usize..=50) {
        let c = common::random_real_poly(&mut common::rng(seed), d);
        let f = CoeffSeq::from_f64("real", d as u64, d as f64, &c).unwrap();
        let ours = solve(&f);
        let oracle = companion_roots(&c);
        prop_assert_eq!(ours.len(), d);
        let h = hausdorff(&ours, &oracle);
        prop_assert!(h <= 1e-7, "Hausdorff distance {}", h);
    }

    #[test]
    fn real_inputs_give_conjugate_closed_roots(seed in any::<u64>(), d in 1usize..=80) {
        let c = common::random_real_poly(&mut common::rng(seed), d);
        let ours = solve(&CoeffSeq::from_f64("real", d as u64, d as f64, &c).unwrap());
        let conj: Vec<Complex64> = ours.iter().map(|z| z.conj()).collect();
        prop_assert!(hausdorff(&ours, &conj) <= 1e-10);
    }

    #[test]
    fn root_count_and_certificate(seed in any::<u64>(), d in 1usize..=120, zp in 0.0f64..0.5) {
        let f = common::random_coeffseq(&mut common::rng(seed), d, 100.0, zp);
        let rs = aberth_roots(&f, AberthOptions::default()).unwrap();
        prop_assert_eq!(rs.roots.len() + rs.zeros_at_origin, f.degree());
        prop_assert_eq!(rs.zeros_at_origin, f.lowest_index());
        for r in &rs.roots {
            prop_assert!(r.residual_log <= rs.residual_tol_log, "residual {}", r.residual_log);
        }
    }

    #[test]
    fn rescaling_divides_roots(seed in any::<u64>(), d in 1usize..=60, log_r in -30.0f64..30.0) {
        let r = log_r.exp();
        let c = common::random_real_poly(&mut common::rng(seed), d);
        let f = CoeffSeq::from_f64("real", d as u64, d as f64, &c).unwrap();
        let base: Vec<Complex64> = solve(&f).iter().map(|z| z / r).collect();
        let scaled = solve(&rescale(&f, r, d as f64).unwrap());
        // relative comparison, so distances are measured in units of |z|
        let rel = |a: &[Complex64], b: &[Complex64]| {
            a.iter()
                .map(|p| b.iter().map(|q| (p - q).norm()).fold(f64::INFINITY, f64::min) / p.norm())
                .fold(0.0, f64::max)
        };
        prop_assert!(rel(&scaled, &base) <= 1e-8 && rel(&base, &scaled) <= 1e-8);
    }
}

/// Roots of modulus at most 4 for truncations `k` and `k + 2`.
fn truncation_gap(make: impl Fn(usize) -> CoeffSeq, k: usize) -> (usize, f64) {
    let inside = |f: &CoeffSeq| -> Vec<Complex64> {
        solve(f).into_iter().filter(|z| z.norm() <= DEFAULT_TRUNCATION_RADIUS).collect()
    };
    let (a, b) = (inside(&make(k)), inside(&make(k + 2)));
    assert!(!a.is_empty());
    // a root near |z| = 4 may sit on either side of the cut
    let all_b = solve(&make(k + 2));
    let all_a = solve(&make(k));
    (a.len(), directed_gap(&a, &all_b).max(directed_gap(&b, &all_a)))
}

#[test]
fn ruelle_truncation_is_stable_inside_radius_four() {
    for c in [-2.05, -2.2, -3.0] {
        let k = ruelle_auto_k(c, DEFAULT_TRUNCATION_RADIUS, DEFAULT_TAIL_LOG_TOL).unwrap();
        let (n, gap) = truncation_gap(|k| ruelle_zeta(c, k).unwrap(), k);
        assert!(gap <= 1e-8, "c={c}, K={k}: {n} roots, gap {gap:e}");
    }
}

#[test]
fn hardy_truncation_is_stable_inside_radius_four() {
    for a in [0.5, 0.9, 0.99] {
        let k = hardy_auto_k(a, DEFAULT_TRUNCATION_RADIUS, DEFAULT_TAIL_LOG_TOL).unwrap();
        let (n, gap) = truncation_gap(|k| hardy(a, k).unwrap(), k);
        assert!(gap <= 1e-8, "a={a}, K={k}: {n} roots, gap {gap:e}");
    }
}

#[test]
fn huge_dynamic_range_roots() {
    // zeros 1e-300, 1, 1e300: coefficients span 600 decades
    let zs = [1e-300, 1.0, 1e300].map(|x| Complex64::new(x, 0.0));
    let f = zerodist::series::from_roots("wide", &zs).unwrap();
    let rs = aberth_roots(&f, AberthOptions::default()).unwrap();
    assert!(rs.certificate_holds());
    let mut logs: Vec<f64> = rs.roots.iter().map(|r| r.modulus_log).collect();
    logs.sort_by(f64::total_cmp);
    for (got, want) in logs.iter().zip([1e-300f64.ln(), 0.0, 1e300f64.ln()]) {
        assert!((got - want).abs() < 1e-10, "{got} vs {want}");
    }
}

#[test]
fn solver_is_deterministic() {
    let f = common::random_coeffseq(&mut common::rng(7), 90, 30.0, 0.1);
    let a = aberth_roots(&f, AberthOptions::default()).unwrap();
    let b = aberth_roots(&f, AberthOptions::default()).unwrap();
    assert_eq!(a, b);
}
