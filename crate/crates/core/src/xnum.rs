//! Extended-exponent real and complex numbers.
//!
//! An [`ExtScalar`] is `mantissa * 2^exponent` with `|mantissa|` in `[1, 2)`
//! (or exactly zero) and a signed 64-bit exponent. The sign is carried by the
//! mantissa, so `mantissa()` reports the magnitude and `sign()` the sign.
//!
//! [`ExtComplex`] uses rectangular form with one shared exponent: the value is
//! `(re + i*im) * 2^exponent` where `max(|re|, |im|)` lies in `[1, 2)`. The
//! smaller component may lose low bits when the two parts differ by more than
//! 53 binary orders, which is below the rounding of the larger part anyway.
//! Addition therefore stays a plain aligned add, which a magnitude/phase form
//! could not offer.
//!
//! Addition swamps deterministically: when exponents differ by more than
//! [`SWAMP_BITS`] the smaller operand is dropped and the larger returned as is.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exponent gap beyond which the smaller addend is dropped.
pub const SWAMP_BITS: i64 = 53;

const EXP_MASK: u64 = 0x7ff << 52;

/// `x * 2^k` for any `k`, exact unless the result leaves the f64 range.
pub fn ldexp(mut x: f64, mut k: i64) -> f64 {
    while k > 1000 {
        x *= f64::from_bits(((1000 + 1023) as u64) << 52);
        k -= 1000;
        if x.is_infinite() {
            return x;
        }
    }
    while k < -1000 {
        x *= f64::from_bits(((-1000 + 1023) as u64) << 52);
        k += 1000;
        if x == 0.0 {
            return x;
        }
    }
    x * f64::from_bits(((k + 1023) as u64) << 52)
}

/// Splits a finite nonzero `x` into `(m, e)` with `|m|` in `[1, 2)`.
#[inline]
fn split(x: f64) -> (f64, i64) {
    debug_assert!(x.is_finite() && x != 0.0);
    let bits = x.to_bits();
    let biased = ((bits & EXP_MASK) >> 52) as i64;
    if biased == 0 {
        // subnormal
        let (m, e) = split(x * f64::from_bits(((64 + 1023) as u64) << 52));
        return (m, e - 64);
    }
    let m = f64::from_bits((bits & !EXP_MASK) | (1023u64 << 52));
    (m, biased - 1023)
}

/// Binary exponent of a finite nonzero f64 (floor of log2 |x|).
#[inline]
fn exponent_of(x: f64) -> i64 {
    split(x).1
}

// ---------------------------------------------------------------------------
// ExtScalar
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExtScalar {
    m: f64,
    e: i64,
}

impl ExtScalar {
    pub const ZERO: ExtScalar = ExtScalar { m: 0.0, e: 0 };
    pub const ONE: ExtScalar = ExtScalar { m: 1.0, e: 0 };

    /// Builds `m * 2^e` and normalizes. Panics on non-finite `m`.
    pub fn new(m: f64, e: i64) -> Self {
        assert!(m.is_finite(), "non-finite mantissa {m}");
        if m == 0.0 {
            return Self::ZERO;
        }
        let (mm, de) = split(m);
        ExtScalar { m: mm, e: e + de }
    }

    pub fn from_f64(x: f64) -> Self {
        Self::new(x, 0)
    }

    /// `sign * exp(log_abs)`, never materializing the power as a double.
    pub fn from_log_abs(log_abs: f64, negative: bool) -> Self {
        if log_abs == f64::NEG_INFINITY {
            return Self::ZERO;
        }
        assert!(log_abs.is_finite(), "non-finite log magnitude {log_abs}");
        let l2 = log_abs / std::f64::consts::LN_2;
        let e = l2.floor();
        let frac = log_abs - e * std::f64::consts::LN_2;
        let m = frac.exp();
        let m = if negative { -m } else { m };
        Self::new(m, e as i64)
    }

    pub fn is_zero(&self) -> bool {
        self.m == 0.0
    }

    /// Magnitude of the mantissa, in `[1, 2)` or zero.
    pub fn mantissa(&self) -> f64 {
        self.m.abs()
    }

    /// Mantissa with sign, as serialized.
    pub fn signed_mantissa(&self) -> f64 {
        self.m
    }

    pub fn exponent(&self) -> i64 {
        self.e
    }

    /// `+1` for zero and positive values, `-1` otherwise.
    pub fn sign(&self) -> i8 {
        if self.m < 0.0 {
            -1
        } else {
            1
        }
    }

    pub fn abs(&self) -> Self {
        ExtScalar { m: self.m.abs(), e: self.e }
    }

    /// Nearest f64; saturates to infinity or flushes to zero out of range.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        ldexp(self.m, self.e)
    }

    /// Natural log of the magnitude.
    pub fn log_abs(&self) -> Result<f64> {
        if self.is_zero() {
            return Err(Error::LogOfZero);
        }
        Ok(self.e as f64 * std::f64::consts::LN_2 + self.m.abs().ln())
    }

    /// log2 of the magnitude.
    pub fn log2_abs(&self) -> Result<f64> {
        if self.is_zero() {
            return Err(Error::LogOfZero);
        }
        Ok(self.e as f64 + self.m.abs().log2())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::new(1.0 / self.m, -self.e))
    }

    /// Integer power by repeated squaring.
    pub fn powi(&self, n: u64) -> Self {
        let mut base = *self;
        let mut acc = Self::ONE;
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            n >>= 1;
        }
        acc
    }

    /// Exact magnitude comparison.
    pub fn cmp_abs(&self, other: &Self) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            _ => self
                .e
                .cmp(&other.e)
                .then(self.m.abs().partial_cmp(&other.m.abs()).unwrap()),
        }
    }

    /// Nearest value from an arbitrary-precision integer.
    pub fn from_bigint(x: &num_bigint::BigInt) -> Self {
        use num_bigint::Sign;
        let (sign, mag) = x.to_u64_digits();
        if sign == Sign::NoSign || mag.is_empty() {
            return Self::ZERO;
        }
        let bits = x.bits() as i64;
        // keep the top 64 bits; the rest is below f64 resolution
        let shift = (bits - 64).max(0);
        let top: num_bigint::BigUint = x.magnitude() >> (shift as usize);
        let top = top.to_u64_digits().first().copied().unwrap_or(0);
        let m = top as f64;
        let m = if sign == Sign::Minus { -m } else { m };
        Self::new(m, shift)
    }
}

impl Default for ExtScalar {
    fn default() -> Self {
        Self::ZERO
    }
}

impl From<f64> for ExtScalar {
    fn from(x: f64) -> Self {
        Self::from_f64(x)
    }
}

impl Mul for ExtScalar {
    type Output = ExtScalar;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::ZERO;
        }
        Self::new(self.m * rhs.m, self.e + rhs.e)
    }
}

impl Div for ExtScalar {
    type Output = ExtScalar;
    /// Panics on division by zero; use [`ExtScalar::recip`] for a checked form.
    fn div(self, rhs: Self) -> Self {
        assert!(!rhs.is_zero(), "ExtScalar division by zero");
        if self.is_zero() {
            return Self::ZERO;
        }
        Self::new(self.m / rhs.m, self.e - rhs.e)
    }
}

impl Add for ExtScalar {
    type Output = ExtScalar;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let diff = self.e - rhs.e;
        if diff > SWAMP_BITS {
            return self;
        }
        if diff < -SWAMP_BITS {
            return rhs;
        }
        if diff >= 0 {
            let m = self.m + ldexp(rhs.m, -diff);
            if m == 0.0 {
                return Self::ZERO;
            }
            Self::new(m, self.e)
        } else {
            let m = ldexp(self.m, diff) + rhs.m;
            if m == 0.0 {
                return Self::ZERO;
            }
            Self::new(m, rhs.e)
        }
    }
}

impl Neg for ExtScalar {
    type Output = ExtScalar;
    fn neg(self) -> Self {
        if self.is_zero() {
            return self;
        }
        ExtScalar { m: -self.m, e: self.e }
    }
}

impl Sub for ExtScalar {
    type Output = ExtScalar;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl fmt::Display for ExtScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}", self.m, self.e)
    }
}

#[derive(Serialize, Deserialize)]
struct ScalarRepr {
    m: f64,
    e: i64,
}

impl Serialize for ExtScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ScalarRepr { m: self.m, e: self.e }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExtScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = ScalarRepr::deserialize(d)?;
        if !r.m.is_finite() {
            return Err(serde::de::Error::custom("mantissa must be finite"));
        }
        Ok(ExtScalar::new(r.m, r.e))
    }
}

// ---------------------------------------------------------------------------
// ExtComplex
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExtComplex {
    re: f64,
    im: f64,
    e: i64,
}

impl ExtComplex {
    pub const ZERO: ExtComplex = ExtComplex { re: 0.0, im: 0.0, e: 0 };
    pub const ONE: ExtComplex = ExtComplex { re: 1.0, im: 0.0, e: 0 };

    /// Builds `(re + i*im) * 2^e` and normalizes the shared exponent.
    #[inline]
    pub fn new(re: f64, im: f64, e: i64) -> Self {
        debug_assert!(re.is_finite() && im.is_finite(), "non-finite parts {re} {im}");
        let big = re.abs().max(im.abs());
        if big == 0.0 {
            return Self::ZERO;
        }
        let k = exponent_of(big);
        if k == 0 {
            return ExtComplex { re, im, e };
        }
        if (-1000..=1000).contains(&k) {
            let s = f64::from_bits(((1023 - k) as u64) << 52);
            ExtComplex { re: re * s, im: im * s, e: e + k }
        } else {
            ExtComplex { re: ldexp(re, -k), im: ldexp(im, -k), e: e + k }
        }
    }

    pub fn from_parts(re: ExtScalar, im: ExtScalar) -> Self {
        if re.is_zero() && im.is_zero() {
            return Self::ZERO;
        }
        if im.is_zero() {
            return Self::new(re.m, 0.0, re.e);
        }
        if re.is_zero() {
            return Self::new(0.0, im.m, im.e);
        }
        let e = re.e.max(im.e);
        Self::new(ldexp(re.m, re.e - e), ldexp(im.m, im.e - e), e)
    }

    pub fn from_real(x: ExtScalar) -> Self {
        Self::from_parts(x, ExtScalar::ZERO)
    }

    pub fn from_f64(x: f64) -> Self {
        Self::new(x, 0.0, 0)
    }

    pub fn from_complex(z: Complex64) -> Self {
        Self::new(z.re, z.im, 0)
    }

    /// `exp(log_abs) * (cos(arg) + i sin(arg))`.
    pub fn from_polar_log(log_abs: f64, arg: f64) -> Self {
        let r = ExtScalar::from_log_abs(log_abs, false);
        if r.is_zero() {
            return Self::ZERO;
        }
        let (s, c) = arg.sin_cos();
        Self::new(r.m * c, r.m * s, r.e)
    }

    pub fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    pub fn re(&self) -> ExtScalar {
        ExtScalar::new(self.re, self.e)
    }

    pub fn im(&self) -> ExtScalar {
        ExtScalar::new(self.im, self.e)
    }

    pub fn exponent(&self) -> i64 {
        self.e
    }

    /// Mantissa pair, scaled by `2^exponent()` to give the value.
    pub fn mantissas(&self) -> (f64, f64) {
        (self.re, self.im)
    }

    pub fn conj(&self) -> Self {
        ExtComplex { re: self.re, im: -self.im, e: self.e }
    }

    pub fn abs(&self) -> ExtScalar {
        if self.is_zero() {
            return ExtScalar::ZERO;
        }
        ExtScalar::new(self.re.hypot(self.im), self.e)
    }

    pub fn log_abs(&self) -> Result<f64> {
        if self.is_zero() {
            return Err(Error::LogOfZero);
        }
        Ok(self.e as f64 * std::f64::consts::LN_2 + self.re.hypot(self.im).ln())
    }

    /// Argument in `(-pi, pi]`; zero for the origin.
    pub fn arg(&self) -> f64 {
        self.im.atan2(self.re)
    }

    pub fn to_complex(&self) -> Complex64 {
        if self.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        Complex64::new(ldexp(self.re, self.e), ldexp(self.im, self.e))
    }

    /// Value divided by `2^shift`, as a double pair.
    pub fn to_complex_scaled(&self, shift: i64) -> Complex64 {
        if self.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        Complex64::new(ldexp(self.re, self.e - shift), ldexp(self.im, self.e - shift))
    }

    pub fn scale_real(&self, x: ExtScalar) -> Self {
        if x.is_zero() || self.is_zero() {
            return Self::ZERO;
        }
        Self::new(self.re * x.m, self.im * x.m, self.e + x.e)
    }

    pub fn mul_f64(&self, x: f64) -> Self {
        if x == 0.0 || self.is_zero() {
            return Self::ZERO;
        }
        Self::new(self.re * x, self.im * x, self.e)
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let d = self.re * self.re + self.im * self.im;
        Ok(Self::new(self.re / d, -self.im / d, -self.e))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::ZERO);
        }
        let d = rhs.re * rhs.re + rhs.im * rhs.im;
        let re = (self.re * rhs.re + self.im * rhs.im) / d;
        let im = (self.im * rhs.re - self.re * rhs.im) / d;
        Ok(Self::new(re, im, self.e - rhs.e))
    }

    pub fn powi(&self, n: u64) -> Self {
        let mut base = *self;
        let mut acc = Self::ONE;
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            n >>= 1;
        }
        acc
    }
}

impl Default for ExtComplex {
    fn default() -> Self {
        Self::ZERO
    }
}

impl From<ExtScalar> for ExtComplex {
    fn from(x: ExtScalar) -> Self {
        Self::from_real(x)
    }
}

impl From<Complex64> for ExtComplex {
    fn from(z: Complex64) -> Self {
        Self::from_complex(z)
    }
}

impl Mul for ExtComplex {
    type Output = ExtComplex;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::ZERO;
        }
        Self::new(
            self.re * rhs.re - self.im * rhs.im,
            self.re * rhs.im + self.im * rhs.re,
            self.e + rhs.e,
        )
    }
}

impl Div for ExtComplex {
    type Output = ExtComplex;
    /// Panics on division by zero; use [`ExtComplex::checked_div`] otherwise.
    fn div(self, rhs: Self) -> Self {
        self.checked_div(&rhs).expect("ExtComplex division by zero")
    }
}

impl Add for ExtComplex {
    type Output = ExtComplex;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let diff = self.e - rhs.e;
        if diff > SWAMP_BITS {
            return self;
        }
        if diff < -SWAMP_BITS {
            return rhs;
        }
        if diff >= 0 {
            let s = f64::from_bits(((1023 - diff) as u64) << 52);
            Self::new(self.re + rhs.re * s, self.im + rhs.im * s, self.e)
        } else {
            let s = f64::from_bits(((1023 + diff) as u64) << 52);
            Self::new(self.re * s + rhs.re, self.im * s + rhs.im, rhs.e)
        }
    }
}

impl Neg for ExtComplex {
    type Output = ExtComplex;
    fn neg(self) -> Self {
        ExtComplex { re: -self.re, im: -self.im, e: self.e }
    }
}

impl Sub for ExtComplex {
    type Output = ExtComplex;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

#[derive(Serialize, Deserialize)]
struct ComplexRepr {
    re: ExtScalar,
    im: ExtScalar,
}

impl Serialize for ExtComplex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ComplexRepr { re: self.re(), im: self.im() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExtComplex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = ComplexRepr::deserialize(d)?;
        Ok(ExtComplex::from_parts(r.re, r.im))
    }
}

/// Horner evaluation of `sum coeffs[k] z^k`.
pub fn horner(coeffs: &[ExtComplex], z: ExtComplex) -> ExtComplex {
    coeffs.iter().rev().fold(ExtComplex::ZERO, |acc, &c| acc * z + c)
}

/// Horner evaluation of the polynomial and its derivative together.
pub fn horner_with_derivative(coeffs: &[ExtComplex], z: ExtComplex) -> (ExtComplex, ExtComplex) {
    let mut p = ExtComplex::ZERO;
    let mut dp = ExtComplex::ZERO;
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_identity_and_exponent_addition() {
        let one = ExtScalar::ONE;
        assert_eq!(one * one, ExtScalar::new(1.0, 0));
        let big = ExtScalar::new(1.0, 1000);
        let p = big * big;
        assert_eq!(p.exponent(), 2000);
        assert_eq!(p.mantissa(), 1.0);
    }

    #[test]
    fn three_times_five() {
        let p = ExtScalar::from_f64(3.0) * ExtScalar::from_f64(5.0);
        assert_eq!(p.mantissa(), 1.875);
        assert_eq!(p.exponent(), 3);
        assert_eq!(p.sign(), 1);
    }

    #[test]
    fn add_cases() {
        let x = ExtScalar::from_f64(-7.25);
        assert_eq!(x + ExtScalar::ZERO, x);
        let a = ExtScalar::new(1.0, 100);
        let b = ExtScalar::new(1.0, -100);
        assert_eq!(a + b, a);
        assert_eq!(b + a, a);
        assert_eq!(ExtScalar::from_f64(3.0) + ExtScalar::from_f64(5.0), ExtScalar::from_f64(8.0));
        assert_eq!(ExtScalar::from_f64(3.0) - ExtScalar::from_f64(3.0), ExtScalar::ZERO);
    }

    #[test]
    fn log_abs_values() {
        assert_eq!(ExtScalar::ONE.log_abs().unwrap(), 0.0);
        let e = ExtScalar::from_f64(std::f64::consts::E);
        assert!((e.log_abs().unwrap() - 1.0).abs() <= 1e-12);
        let x = ExtScalar::new(1.0, 1000);
        assert!((x.log_abs().unwrap() - 693.147_180_559_945_3).abs() < 1e-9);
        assert!(matches!(ExtScalar::ZERO.log_abs(), Err(Error::LogOfZero)));
        assert!(matches!(ExtComplex::ZERO.log_abs(), Err(Error::LogOfZero)));
    }

    #[test]
    fn normalized_zero() {
        let z = ExtScalar::new(0.0, 17);
        assert_eq!(z.exponent(), 0);
        assert_eq!(z.sign(), 1);
        let z = ExtScalar::new(-0.0, 3);
        assert_eq!(z.sign(), 1);
    }

    #[test]
    fn subnormal_input_normalizes() {
        let x = ExtScalar::from_f64(5e-324);
        assert_eq!(x.mantissa(), 1.0);
        assert_eq!(x.exponent(), -1074);
        assert_eq!(x.to_f64(), 5e-324);
    }

    #[test]
    fn from_log_abs_round_trip() {
        for &l in &[-1e5, -700.0, -1.0, 0.0, 0.5, 3.25, 1e5] {
            let x = ExtScalar::from_log_abs(l, true);
            assert_eq!(x.sign(), -1);
            assert!((x.log_abs().unwrap() - l).abs() <= 1e-12 * l.abs().max(1.0));
        }
        assert!(ExtScalar::from_log_abs(f64::NEG_INFINITY, false).is_zero());
    }

    #[test]
    fn bigint_conversion() {
        let x: num_bigint::BigInt = "-39916800".parse().unwrap();
        assert_eq!(ExtScalar::from_bigint(&x).to_f64(), -39916800.0);
        let big: num_bigint::BigInt = num_bigint::BigInt::from(3u8).pow(500);
        let l = ExtScalar::from_bigint(&big).log_abs().unwrap();
        assert!((l - 500.0 * 3f64.ln()).abs() < 1e-10);
    }

    #[test]
    fn complex_arithmetic() {
        let i = ExtComplex::new(0.0, 1.0, 0);
        let m1 = i * i;
        assert_eq!(m1.to_complex(), Complex64::new(-1.0, 0.0));
        let a = ExtComplex::from_complex(Complex64::new(3.0, -4.0));
        assert_eq!(a.abs().to_f64(), 5.0);
        let q = a.checked_div(&a).unwrap();
        assert!((q.to_complex() - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        let r = a.recip().unwrap().to_complex();
        assert!((r - Complex64::new(3.0, 4.0) / 25.0).norm() < 1e-16);
        assert!(a.checked_div(&ExtComplex::ZERO).is_err());
    }

    #[test]
    fn complex_huge_exponents() {
        let big = ExtComplex::from_polar_log(1e6, 0.3);
        let small = ExtComplex::from_polar_log(-1e6, -0.2);
        let p = big * small;
        assert!((p.log_abs().unwrap()).abs() < 1e-9);
        assert!((p.arg() - 0.1).abs() < 1e-12);
        assert_eq!(big + small, big);
        assert!(big.to_complex().re.is_infinite());
    }

    #[test]
    fn horner_matches_direct() {
        let c: Vec<ExtComplex> = [1.0, -2.0, 0.5, 3.0].iter().map(|&x| ExtComplex::from_f64(x)).collect();
        let z = Complex64::new(0.3, -1.1);
        let direct = 1.0 - 2.0 * z + 0.5 * z * z + 3.0 * z * z * z;
        let ddirect = -2.0 + z + 9.0 * z * z;
        let (p, dp) = horner_with_derivative(&c, ExtComplex::from_complex(z));
        assert!((p.to_complex() - direct).norm() < 1e-14);
        assert!((dp.to_complex() - ddirect).norm() < 1e-14);
        assert_eq!(horner(&c, ExtComplex::from_complex(z)), p);
    }

    #[test]
    fn json_pair() {
        let x = ExtScalar::from_f64(-12.0);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"m":-1.5,"e":3}"#);
        let back: ExtScalar = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
        let z = ExtComplex::from_complex(Complex64::new(0.5, -3.0));
        let s = serde_json::to_string(&z).unwrap();
        let back: ExtComplex = serde_json::from_str(&s).unwrap();
        assert_eq!(back, z);
    }
}
