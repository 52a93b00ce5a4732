//! Exact arithmetic substrate: rationals, univariate polynomials and rational
//! functions in `z`, dense linear algebra and multigraded polynomials.
//!
//! Everything here works over `Q`. No operation relies on algebraic closure;
//! the only field facts used downstream are characteristic zero and that `Q*`
//! has infinite rank over `Z` (distinct primes are independent).

mod matrix;
mod monomials;
mod multipoly;
mod ratfunc;
pub mod simplex;
mod unipoly;

pub use matrix::{rank_kernel, solve_in_span, EchelonSpan, QMatrix, SpanSolution};
pub use monomials::{enumerate_monomials, pointedness, DegreeLayout, MonomialEnumerator, MonomialError, Pointedness};
pub use multipoly::{exponent_degree, grlex_cmp, Exponent, MultiPoly};
pub use ratfunc::RationalFunction;
pub use unipoly::UniPoly;

/// Arbitrary-precision rational number in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
