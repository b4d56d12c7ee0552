//! Exact scalars: rationals, cyclotomic numbers and formally phased coefficients.

mod coeff;
mod cyclotomic;
mod parse;

pub use coeff::{Coeff, PhaseForm, PhaseVar};
pub use cyclotomic::{totient, Cyclotomic};
pub use parse::{parse_complex, parse_rational, ExactComplex};

/// Arbitrary-precision rational used throughout the exact code paths.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
