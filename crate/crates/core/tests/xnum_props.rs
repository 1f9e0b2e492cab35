//! Extended-exponent arithmetic over huge dynamic ranges.

use proptest::prelude::*;
use zerodist::xnum::{horner, horner_with_derivative};
use zerodist::{ExtComplex, ExtScalar};

fn finite_nonzero() -> impl Strategy<Value = f64> {
    prop_oneof![-1e300f64..-1e-300, 1e-300f64..1e300]
}

fn ext_scalar() -> impl Strategy<Value = ExtScalar> {
    (-1e5f64..1e5, any::<bool>()).prop_map(|(l, neg)| ExtScalar::from_log_abs(l, neg))
}

fn ext_complex(log_range: f64) -> impl Strategy<Value = ExtComplex> {
    (-log_range..log_range, 0.0f64..std::f64::consts::TAU).prop_map(|(l, a)| ExtComplex::from_polar_log(l, a))
}

proptest! {
    #[test]
    fn log_round_trip(x in finite_nonzero()) {
        let l = ExtScalar::from_f64(x).log_abs().unwrap();
        prop_assert!((l - x.abs().ln()).abs() <= 1e-12 * x.abs().ln().abs().max(1.0));
    }

    #[test]
    fn multiplication_is_associative(a in ext_scalar(), b in ext_scalar(), c in ext_scalar()) {
        let (l, r) = ((a * b) * c, a * (b * c));
        let ratio = (l / r).to_f64();
        prop_assert!((ratio - 1.0).abs() <= 4.0 * f64::EPSILON, "ratio {}", ratio);
    }

    #[test]
    fn product_logs_add(a in ext_scalar(), b in ext_scalar()) {
        let l = (a * b).log_abs().unwrap();
        let want = a.log_abs().unwrap() + b.log_abs().unwrap();
        prop_assert!((l - want).abs() <= 1e-12 * want.abs().max(1.0));
    }

    #[test]
    fn horner_stays_finite(
        coeffs in prop::collection::vec(ext_complex(1e5), 1..200),
        z in ext_complex(1e6),
    ) {
        let v = horner(&coeffs, z);
        let (p, dp) = horner_with_derivative(&coeffs, z);
        prop_assert_eq!(v, p);
        for w in [p, dp] {
            let (re, im) = w.mantissas();
            prop_assert!(re.is_finite() && im.is_finite());
            if !w.is_zero() {
                prop_assert!(w.log_abs().unwrap().is_finite());
            }
        }
    }

    #[test]
    fn complex_division_inverts_multiplication(a in ext_complex(1e4), b in ext_complex(1e4)) {
        let back = (a * b).checked_div(&b).unwrap();
        let err = (back - a).log_abs().unwrap_or(f64::NEG_INFINITY) - a.log_abs().unwrap();
        prop_assert!(err <= (8.0 * f64::EPSILON).ln(), "relative error e^{}", err);
    }
}
