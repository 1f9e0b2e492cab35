//! `zerodist`: coefficients, maximum modulus and the asymptotic distribution
//! of zeros for families of polynomials and entire functions.
//!
//! A family member `f_n(z) = sum a_{n,k} z^k` comes with a normalization `V_n`.
//! The crate links three views of it:
//!
//! - the coefficient side: the greatest convex minorant `psi_n` of the points
//!   `(k / V_n, -ln|a_{n,k}| / V_n)` and its Legendre transform ([`convex`]);
//! - the modulus side: maximal term, central index and two-sided bounds on
//!   `(1/V_n) ln M(e^t, f_n)` ([`wiman`]);
//! - the zeros themselves, found with an extended-range Aberth iteration
//!   ([`roots`]) and compared as empirical measures ([`measures`]).
//!
//! [`series`] builds the families (partial sums, connected-graph polynomials,
//! a Ruelle zeta function, Hardy's lacunary-like series, random zeros), and
//! [`pipeline`] runs the end-to-end checks.
//!
//! All magnitudes go through [`xnum`], so coefficients like `a^(2^k)` or
//! products of doubly-exponential iterates never overflow.

#![forbid(unsafe_code)]

pub mod convex;
pub mod error;
pub mod measures;
pub mod pipeline;
pub mod roots;
pub mod series;
pub mod wiman;
pub mod xnum;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use xnum::{ExtComplex, ExtScalar};
