//! Family generators against independent oracles.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use zerodist::series::{
    factorial, geometric_partial_sum, hardy, partial_sums, random_roots_disk, rescale, ruelle_iterates,
    ruelle_zeta, tutte_connected, tutte_connected_all, v_of_c, BigIntPoly,
};
use zerodist::wiman::maximal_term;
use zerodist::{ExtComplex, ExtScalar};

/// Edge counts of connected labeled graphs on `n` vertices, by brute force
/// over all edge subsets of the complete graph.
fn connected_edge_counts(n: usize) -> Vec<u64> {
    let edges: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut counts = vec![0u64; edges.len() + 1];
    for mask in 0u32..(1 << edges.len()) {
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            if p[x] != x {
                p[x] = find(p, p[x]);
            }
            p[x]
        }
        let mut components = n;
        for (b, &(i, j)) in edges.iter().enumerate() {
            if mask >> b & 1 == 1 {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                    components -= 1;
                }
            }
        }
        if components == 1 {
            counts[mask.count_ones() as usize] += 1;
        }
    }
    counts
}

/// `sum_k counts[k] (y - 1)^k` expanded in powers of `y`.
fn expand_shifted(counts: &[u64]) -> BigIntPoly {
    let y_minus_1 = BigIntPoly::new(vec![BigInt::from(-1), BigInt::from(1)]);
    let mut pow = BigIntPoly::new(vec![BigInt::one()]);
    let mut acc = BigIntPoly::new(vec![BigInt::zero()]);
    for &c in counts {
        let term = pow.scale(&BigInt::from(c));
        acc = acc.sub(&term.scale(&BigInt::from(-1)));
        pow = pow.mul(&y_minus_1);
    }
    acc
}

#[test]
fn tutte_matches_brute_force_enumeration() {
    for n in 1..=5 {
        let oracle = expand_shifted(&connected_edge_counts(n));
        assert_eq!(tutte_connected(n).unwrap(), oracle, "n = {n}");
    }
}

#[test]
fn tutte_anchors() {
    for (n, p) in (1..=12).zip(tutte_connected_all(12).unwrap()) {
        assert_eq!(p.degree(), n * (n - 1) / 2);
        assert!(p.is_monic());
        let sign = if n % 2 == 1 { 1 } else { -1 };
        assert_eq!(*p.constant_term(), BigInt::from(sign) * factorial(n as u64 - 1));
    }
}

fn eval_rational(p: &BigIntPoly, y: &BigRational) -> BigRational {
    p.coeffs().iter().rev().fold(BigRational::zero(), |acc, c| acc * y + BigRational::from_integer(c.clone()))
}

/// `exp(A(x))` through order `n` for a series with `A(0) = 0`, exactly.
fn series_exp(a: &[BigRational]) -> Vec<BigRational> {
    let mut e = vec![BigRational::one()];
    for m in 1..a.len() {
        let mut s = BigRational::zero();
        for k in 1..=m {
            s += BigRational::from_integer(k.into()) * &a[k] * &e[m - k];
        }
        e.push(s / BigRational::from_integer(m.into()));
    }
    e
}

#[test]
fn tutte_egf_identity_in_exact_rationals() {
    const N: usize = 8;
    let polys = tutte_connected_all(N).unwrap();
    let ys = [
        BigRational::zero(),
        BigRational::new(1.into(), 2.into()),
        BigRational::one(),
    ];
    for y in &ys {
        let fact = |n: usize| BigRational::from_integer(factorial(n as u64));
        let mut a = vec![BigRational::zero()];
        a.extend(polys.iter().enumerate().map(|(i, p)| eval_rational(p, y) / fact(i + 1)));
        let lhs = series_exp(&a);
        for (n, got) in lhs.iter().enumerate() {
            let want = num_traits::pow(y.clone(), n * n.saturating_sub(1) / 2) / fact(n);
            assert_eq!(*got, want, "y = {y}, order {n}");
        }
    }
}

#[test]
fn ruelle_iterates_are_exact_for_integer_parameters() {
    for c in [-3i64, -5, -7] {
        let it = ruelle_iterates(c as f64, 8).unwrap();
        let mut x = BigInt::zero();
        for got in it {
            x = &x * &x + BigInt::from(c);
            if x.bits() > 53 {
                break;
            }
            assert_eq!(got, ExtScalar::from_bigint(&x), "c = {c}");
        }
    }
}

#[test]
fn ruelle_iterates_follow_the_recurrence() {
    for c in [-2.05, -2.5, -2.25] {
        let it = ruelle_iterates(c, 30).unwrap();
        let cc = ExtScalar::from_f64(c);
        for w in it.windows(2) {
            assert_eq!(w[1], w[0] * w[0] + cc);
        }
    }
}

#[test]
fn v_of_c_by_direct_iteration() {
    assert_eq!(v_of_c(-3.0).unwrap(), 4);
    assert!(v_of_c(-2.0).is_err());
    // V grows as c approaches -2
    let vs: Vec<u64> = [-3.0, -2.2, -2.05, -2.001].iter().map(|&c| v_of_c(c).unwrap()).collect();
    assert!(vs.windows(2).all(|w| w[0] <= w[1]), "{vs:?}");
}

#[test]
fn ruelle_coefficients_are_reciprocal_products() {
    let f = ruelle_zeta(-3.0, 5).unwrap();
    let mut prod = 1.0f64;
    let mut x = 0.0f64;
    for (k, c) in f.coeffs().iter().enumerate().skip(1) {
        x = x * x - 3.0;
        prod *= x;
        let want = 1.0 / prod;
        assert!((c.re().to_f64() - want).abs() <= 1e-15 * want.abs(), "k = {k}");
    }
    assert!(f.coeffs()[1].re().to_f64() < 0.0);
}

#[test]
fn rescaling_moves_the_central_index() {
    // exp-series partial sum: nu(1) of f(r z) equals nu(r) of f
    let f = partial_sums(|k| ExtComplex::from_real(ExtScalar::from_bigint(&factorial(k as u64)).recip().unwrap()), 60)
        .unwrap();
    for r in [0.5, 3.0, 17.5, 40.0] {
        let g = rescale(&f, r, f.v()).unwrap();
        assert_eq!(maximal_term(&g, 0.0).1, maximal_term(&f, r.ln()).1, "r = {r}");
    }
}

#[test]
fn generators_are_deterministic() {
    assert_eq!(geometric_partial_sum(50).unwrap(), geometric_partial_sum(50).unwrap());
    assert_eq!(random_roots_disk(40, 9).unwrap(), random_roots_disk(40, 9).unwrap());
    assert_ne!(random_roots_disk(40, 9).unwrap(), random_roots_disk(40, 10).unwrap());
    assert_eq!(ruelle_zeta(-2.1, 12).unwrap(), ruelle_zeta(-2.1, 12).unwrap());
    assert_eq!(hardy(0.9, 20).unwrap(), hardy(0.9, 20).unwrap());
}
