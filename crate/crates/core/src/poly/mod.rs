//! Exact arithmetic kernel: rationals, sparse multivariate polynomials,
//! univariate utilities and the polynomial text parser.

mod bivariate;
mod parse;
mod resultant;
mod sparse;
mod univariate;

pub use bivariate::{common_torus_zero, Bivariate, TorusZero};
pub use parse::parse_polynomial;
pub use resultant::resultant;
pub use sparse::{ExponentVector, SparsePolynomial};
pub use univariate::UnivariatePolynomial;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Unbounded-precision rational, always kept reduced with a positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
