//! Family members `f_n(z) = sum_k a_{n,k} z^k` with their normalization `V_n`.
//!
//! Generators cover Jentzsch-type partial sums, the connected-graph
//! polynomials (exact big-integer coefficients), the Ruelle zeta function of
//! `z^2 + c`, Hardy's function `H_a`, rescalings `f(r z)`, and polynomials
//! built from random zeros in the unit disk.
//!
//! Entire functions are always truncated at a caller-supplied `K`; see
//! [`suggest_truncation`] for picking `K` from a contour radius and a tail
//! tolerance.
//!
//! The Ruelle normalization `V(c)` compares consecutive iterates of
//! `p_c(z) = z^2 + c` started at `0`; the evaluation point is not stated with
//! the ratio condition in the source formula, and `0` is the only point used
//! by the surrounding coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use rand::{RngExt, SeedableRng};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::xnum::{horner, ExtComplex, ExtScalar};

/// Default log tail tolerance used by the automatic truncation rule.
pub const DEFAULT_TAIL_LOG_TOL: f64 = 700.0;
/// Default contour radius of validity for automatic truncation.
pub const DEFAULT_TRUNCATION_RADIUS: f64 = 4.0;

/// One family member: coefficients in extended form plus normalization.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffSeq {
    label: String,
    n: u64,
    v: f64,
    coeffs: Vec<ExtComplex>,
    truncated: bool,
}

impl CoeffSeq {
    /// Validates and trims high-order zero coefficients.
    pub fn new(label: impl Into<String>, n: u64, v: f64, mut coeffs: Vec<ExtComplex>, truncated: bool) -> Result<Self> {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::InvalidArgument(format!("normalization V must be positive, got {v}")));
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::EmptySeries);
        }
        Ok(CoeffSeq { label: label.into(), n, v, coeffs, truncated })
    }

    pub fn from_f64(label: impl Into<String>, n: u64, v: f64, coeffs: &[f64]) -> Result<Self> {
        Self::new(label, n, v, coeffs.iter().map(|&c| ExtComplex::from_f64(c)).collect(), false)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Normalization `V_n`.
    pub fn v(&self) -> f64 {
        self.v
    }

    pub fn coeffs(&self) -> &[ExtComplex] {
        &self.coeffs
    }

    /// Largest index with a nonzero coefficient.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// True for truncations of entire functions.
    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    /// Smallest index with a nonzero coefficient.
    pub fn lowest_index(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn nonzero_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// `ln|a_k|` per index, `-inf` for zero coefficients.
    pub fn log_magnitudes(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.log_abs().unwrap_or(f64::NEG_INFINITY)).collect()
    }

    pub fn with_v(mut self, v: f64) -> Result<Self> {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::InvalidArgument(format!("normalization V must be positive, got {v}")));
        }
        self.v = v;
        Ok(self)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn eval(&self, z: ExtComplex) -> ExtComplex {
        horner(&self.coeffs, z)
    }

    pub fn eval_complex(&self, z: Complex64) -> ExtComplex {
        self.eval(ExtComplex::from_complex(z))
    }

    /// True when every coefficient has zero imaginary part.
    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|c| c.im().is_zero())
    }
}

#[derive(Serialize, Deserialize)]
struct CoeffSeqRepr {
    label: String,
    n: u64,
    #[serde(rename = "V")]
    v: f64,
    degree: usize,
    #[serde(default)]
    truncated: bool,
    coeffs: Vec<ExtComplex>,
}

impl Serialize for CoeffSeq {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CoeffSeqRepr {
            label: self.label.clone(),
            n: self.n,
            v: self.v,
            degree: self.degree(),
            truncated: self.truncated,
            coeffs: self.coeffs.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CoeffSeq {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = CoeffSeqRepr::deserialize(d)?;
        let seq = CoeffSeq::new(r.label, r.n, r.v, r.coeffs, r.truncated).map_err(D::Error::custom)?;
        if seq.degree() != r.degree {
            return Err(D::Error::custom(format!(
                "field `degree` is {} but the last nonzero coefficient has index {}",
                r.degree,
                seq.degree()
            )));
        }
        Ok(seq)
    }
}

/// Partial sum `sum_{k<=n} rule(k) z^k` with `V = n`.
pub fn partial_sums(rule: impl Fn(usize) -> ExtComplex, n: usize) -> Result<CoeffSeq> {
    if n < 1 {
        return Err(Error::InvalidArgument("partial sums need n >= 1".into()));
    }
    let coeffs: Vec<ExtComplex> = (0..=n).map(rule).collect();
    CoeffSeq::new("partial-sum", n as u64, n as f64, coeffs, false)
}

/// `S_n` of the geometric series `1/(1-z)`.
pub fn geometric_partial_sum(n: usize) -> Result<CoeffSeq> {
    Ok(partial_sums(|_| ExtComplex::ONE, n)?.with_label("geometric-partial-sum"))
}

/// Polynomial with the given zeros (monic), `V = n = number of zeros`.
pub fn from_roots(label: impl Into<String>, zeros: &[Complex64]) -> Result<CoeffSeq> {
    if zeros.is_empty() {
        return Err(Error::InvalidArgument("need at least one zero".into()));
    }
    let mut c = vec![ExtComplex::ONE];
    for &z in zeros {
        let r = ExtComplex::from_complex(z);
        let mut next = vec![ExtComplex::ZERO; c.len() + 1];
        for (k, &ck) in c.iter().enumerate() {
            next[k + 1] = next[k + 1] + ck;
            next[k] = next[k] - r * ck;
        }
        c = next;
    }
    let n = zeros.len();
    CoeffSeq::new(label, n as u64, n as f64, c, false)
}

/// `n` i.i.d. zeros uniform in the unit disk from a seeded PCG64 stream.
pub fn random_disk_zeros(n: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = rand_pcg::Pcg64::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let u: f64 = rng.random();
            let th: f64 = rng.random();
            Complex64::from_polar(u.sqrt(), std::f64::consts::TAU * th)
        })
        .collect()
}

/// Monic polynomial whose zeros are [`random_disk_zeros`].
pub fn random_roots_disk(n: usize, seed: u64) -> Result<CoeffSeq> {
    if n < 1 {
        return Err(Error::InvalidArgument("random-roots-disk needs n >= 1".into()));
    }
    from_roots("random-roots-disk", &random_disk_zeros(n, seed))
}

/// `f(r z)` with normalization replaced by `v`.
pub fn rescale(f: &CoeffSeq, r: f64, v: f64) -> Result<CoeffSeq> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidArgument(format!("rescale radius must be positive, got {r}")));
    }
    let rr = ExtScalar::from_f64(r);
    let mut pow = ExtScalar::ONE;
    let coeffs = f
        .coeffs
        .iter()
        .map(|c| {
            let out = c.scale_real(pow);
            pow = pow * rr;
            out
        })
        .collect();
    CoeffSeq::new(f.label.clone(), f.n, v, coeffs, f.truncated)
}

/// Smallest `K` with `log|a_K| + K ln(radius) < log|a_0| - tail_log_tol`.
///
/// `log_coeff(k)` returns `ln|a_k|`. Returns `None` when no such `K <= max_k`
/// exists. The rule assumes eventually super-geometric decay (order zero).
pub fn suggest_truncation(
    log_coeff: impl Fn(usize) -> f64,
    radius: f64,
    tail_log_tol: f64,
    max_k: usize,
) -> Option<usize> {
    let l0 = log_coeff(0);
    let lr = radius.ln();
    (1..=max_k).find(|&k| log_coeff(k) + k as f64 * lr < l0 - tail_log_tol)
}

// ---------------------------------------------------------------------------
// Connected-graph polynomials
// ---------------------------------------------------------------------------

/// Polynomial in `y` with arbitrary-precision integer coefficients
/// (index = power of `y`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigIntPoly {
    coeffs: Vec<BigInt>,
}

impl BigIntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigInt::zero());
        }
        BigIntPoly { coeffs }
    }

    /// `y^d`.
    pub fn monomial(d: usize) -> Self {
        let mut c = vec![BigInt::zero(); d + 1];
        c[d] = BigInt::one();
        BigIntPoly { coeffs: c }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> &BigInt {
        self.coeffs.last().unwrap()
    }

    pub fn constant_term(&self) -> &BigInt {
        &self.coeffs[0]
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = BigInt::zero();
        Self::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) - other.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn eval(&self, y: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * y + c)
    }
}

impl fmt::Display for BigIntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}")?;
                    }
                    if k == 1 {
                        write!(f, "y")?;
                    } else {
                        write!(f, "y^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for BigIntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for BigIntPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let v = Vec::<String>::deserialize(d)?;
        let c = v
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(|e| D::Error::custom(format!("bad integer {s:?}: {e}"))))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(BigIntPoly::new(c))
    }
}

fn binomial(n: u64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Generating polynomials `C_1, ..., C_n` of connected labeled graphs,
/// `C_m(y) = sum_G (y - 1)^{edges(G)}` over connected graphs on `m` vertices.
///
/// Uses the exponential-generating-function recurrence
/// `C_m = F_m - sum_{k=1}^{m-1} binom(m-1, k-1) C_k F_{m-k}`, `F_m = y^{m(m-1)/2}`.
pub fn tutte_connected_all(n: usize) -> Result<Vec<BigIntPoly>> {
    if n < 1 {
        return Err(Error::InvalidArgument("tutte_connected needs n >= 1".into()));
    }
    let all = |m: usize| BigIntPoly::monomial(m * (m - 1) / 2);
    let mut out: Vec<BigIntPoly> = Vec::with_capacity(n);
    for m in 1..=n {
        let mut p = all(m);
        for k in 1..m {
            let term = out[k - 1].mul(&all(m - k)).scale(&binomial((m - 1) as u64, (k - 1) as u64));
            p = p.sub(&term);
        }
        out.push(p);
    }
    Ok(out)
}

/// `C_n(y)`: monic of degree `n(n-1)/2`, constant term `(-1)^{n-1} (n-1)!`.
pub fn tutte_connected(n: usize) -> Result<BigIntPoly> {
    Ok(tutte_connected_all(n)?.pop().unwrap())
}

/// `C_n(y) / n!` in extended form with `V = d_n = n(n-1)/2`.
pub fn tutte_coeffseq(p: &BigIntPoly, n: usize) -> Result<CoeffSeq> {
    if n < 2 {
        return Err(Error::InvalidArgument("tutte_coeffseq needs n >= 2 (d_n > 0)".into()));
    }
    let d = n * (n - 1) / 2;
    if p.degree() != d {
        return Err(Error::InvalidArgument(format!("polynomial degree {} is not n(n-1)/2 = {d}", p.degree())));
    }
    let nf = ExtScalar::from_bigint(&factorial(n as u64));
    let coeffs = p
        .coeffs()
        .iter()
        .map(|c| ExtComplex::from_real(ExtScalar::from_bigint(c) / nf))
        .collect();
    CoeffSeq::new("tutte", n as u64, d as f64, coeffs, false)
}

// ---------------------------------------------------------------------------
// Ruelle zeta and Hardy
// ---------------------------------------------------------------------------

fn check_ruelle_c(c: f64) -> Result<()> {
    if !(c < -2.0 && c.is_finite()) {
        return Err(Error::OutOfRange(format!("Ruelle zeta needs c < -2, got {c}")));
    }
    Ok(())
}

/// Iterates `p_c(0), p_c(p_c(0)), ...` (first `k` of them) in extended form.
/// The binary exponent roughly doubles per step, so `k` is capped at
/// [`RUELLE_MAX_K`].
pub fn ruelle_iterates(c: f64, k: usize) -> Result<Vec<ExtScalar>> {
    check_ruelle_c(c)?;
    if k > RUELLE_MAX_K {
        return Err(Error::TooLarge(format!("K = {k} exceeds {RUELLE_MAX_K} Ruelle iterates")));
    }
    let cc = ExtScalar::from_f64(c);
    let mut x = ExtScalar::ZERO;
    Ok((0..k)
        .map(|_| {
            x = x * x + cc;
            x
        })
        .collect())
}

/// Largest number of Ruelle iterates whose exponents fit the extended range.
pub const RUELLE_MAX_K: usize = 56;

/// Smallest `n >= 1` with `p_c^{n+1}(0) / p_c^n(0) >= 36`.
pub fn v_of_c(c: f64) -> Result<u64> {
    check_ruelle_c(c)?;
    let mut prev = c;
    for n in 1..=10_000u64 {
        let next = prev * prev + c;
        if next / prev >= 36.0 {
            return Ok(n);
        }
        prev = next;
    }
    Err(Error::OutOfRange(format!("orbit of 0 under z^2 + {c} escapes too slowly")))
}

/// `ln|a_k|` of the Ruelle zeta coefficients for `k = 0..=k_max`.
pub fn ruelle_log_coeffs(c: f64, k_max: usize) -> Result<Vec<f64>> {
    let it = ruelle_iterates(c, k_max)?;
    let mut out = Vec::with_capacity(k_max + 1);
    let mut acc = 0.0;
    out.push(0.0);
    for x in it {
        acc -= x.log_abs()?;
        out.push(acc);
    }
    Ok(out)
}

/// `F_c(z) = 1 + sum_{k=1}^{K} z^k / (p_c(0) ... p_c^k(0))`, `V = V(c)`.
pub fn ruelle_zeta(c: f64, k: usize) -> Result<CoeffSeq> {
    if k < 1 {
        return Err(Error::InvalidArgument("Ruelle zeta truncation needs K >= 1".into()));
    }
    let v = v_of_c(c)?;
    let mut prod = ExtScalar::ONE;
    let mut coeffs = vec![ExtComplex::ONE];
    for x in ruelle_iterates(c, k)? {
        prod = prod * x;
        coeffs.push(ExtComplex::from_real(prod.recip()?));
    }
    CoeffSeq::new("ruelle", k as u64, v as f64, coeffs, true)
}

/// Truncation order for `F_c` from the tail rule at `radius`.
pub fn ruelle_auto_k(c: f64, radius: f64, tail_log_tol: f64) -> Result<usize> {
    let logs = ruelle_log_coeffs(c, RUELLE_MAX_K)?;
    suggest_truncation(|k| logs[k], radius, tail_log_tol, RUELLE_MAX_K)
        .ok_or_else(|| Error::OutOfRange(format!("no truncation found for c = {c}")))
}

fn check_hardy_a(a: f64) -> Result<()> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::InvalidArgument(format!("Hardy parameter must lie in (0, 1), got {a}")));
    }
    Ok(())
}

/// `ln a_k = (2^k - 1) ln a` of `H_a`.
pub fn hardy_log_coeff(a: f64, k: usize) -> f64 {
    (2f64.powi(k as i32) - 1.0) * a.ln()
}

/// `H_a(z) = (1/a) sum a^{2^k} z^k` truncated at `K`. The normalization is
/// left at `V = 1`; no normalization is prescribed for this family.
pub fn hardy(a: f64, k: usize) -> Result<CoeffSeq> {
    check_hardy_a(a)?;
    if k < 1 {
        return Err(Error::InvalidArgument("Hardy truncation needs K >= 1".into()));
    }
    if k > 60 {
        return Err(Error::OutOfRange(format!("K = {k} overflows the coefficient exponent range")));
    }
    let coeffs = (0..=k)
        .map(|j| ExtComplex::from_real(ExtScalar::from_log_abs(hardy_log_coeff(a, j), false)))
        .collect();
    CoeffSeq::new("hardy", k as u64, 1.0, coeffs, true)
}

pub fn hardy_auto_k(a: f64, radius: f64, tail_log_tol: f64) -> Result<usize> {
    check_hardy_a(a)?;
    suggest_truncation(|k| hardy_log_coeff(a, k), radius, tail_log_tol, 60)
        .ok_or_else(|| Error::OutOfRange(format!("no truncation found for a = {a}")))
}
