//! Random inputs shared by the integration tests.

#![allow(dead_code)]

use rand::{RngExt, SeedableRng};
use rand_pcg::Pcg64;
use zerodist::series::CoeffSeq;
use zerodist::ExtComplex;

pub fn rng(seed: u64) -> Pcg64 {
    Pcg64::seed_from_u64(seed)
}

/// Degree `d`, `ln|a_k|` uniform in `[-log_range, log_range]`, uniform
/// phases, each inner coefficient zero with probability `zero_prob`.
pub fn random_coeffseq(rng: &mut Pcg64, d: usize, log_range: f64, zero_prob: f64) -> CoeffSeq {
    let coeffs = (0..=d)
        .map(|k| {
            if k != d && k != 0 && rng.random::<f64>() < zero_prob {
                return ExtComplex::ZERO;
            }
            let l = log_range * (2.0 * rng.random::<f64>() - 1.0);
            let arg = std::f64::consts::TAU * rng.random::<f64>();
            ExtComplex::from_polar_log(l, arg)
        })
        .collect();
    CoeffSeq::new("random", d as u64, d.max(1) as f64, coeffs, false).unwrap()
}

/// Real coefficients uniform in `[-1, 1]`, leading one bounded away from 0.
pub fn random_real_poly(rng: &mut Pcg64, d: usize) -> Vec<f64> {
    let mut c: Vec<f64> = (0..=d).map(|_| 2.0 * rng.random::<f64>() - 1.0).collect();
    c[d] = if c[d] < 0.0 { c[d] - 0.5 } else { c[d] + 0.5 };
    c
}
