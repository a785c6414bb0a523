//! Exact arithmetic: rationals, multivariate polynomials, the field Q(u),
//! dense exact linear algebra and Groebner normal forms.

mod groebner;
mod matrix;
mod parse;
mod poly;
mod ratfunc;

pub use groebner::{IdealBasis, QuotientDim};
pub use matrix::{ExactMatrix, Field};
pub use parse::ParseError;
pub use poly::{monomial_string, MonomialOrder, Poly, PolyError};
pub use ratfunc::{RatFuncU, UPoly};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Arbitrary-precision rational number.
pub type Q = BigRational;

/// Exponent vector of a monomial, one entry per variable.
pub type Monomial = Vec<u32>;

/// Shorthand for the rational `n/d`.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for the integer `n` as a rational.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// `(-1)^e` as a rational.
pub(crate) fn sign(e: usize) -> Q {
    if e % 2 == 0 {
        qi(1)
    } else {
        qi(-1)
    }
}

/// Rational text in the polynomial-format style: `3`, `-2`, `(1/2)`.
pub(crate) fn fmt_coeff_abs(c: &Q) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("({}/{})", c.numer(), c.denom())
    }
}

/// Reduce a rational into the half-open interval [0, 1).
pub fn frac_mod1(x: &Q) -> Q {
    x - x.floor()
}
