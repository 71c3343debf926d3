//! Exact arithmetic carriers: integer polynomials in `q` and in
//! `s = sqrt(1 - q)`, bivariate polynomials in `(q, v)`, and truncated
//! power series in `x` over the rationals extended by `q`.

mod poly;
mod qv;
pub mod series;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

pub use poly::{DensePoly, QPolynomial, SPolynomial, Variable, Q, S};
pub use qv::QVPolynomial;
pub use series::{QSeries, RatPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("polynomial is not divisible")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("odd power s^{0} has a nonzero coefficient")]
    OddPowerResidue(usize),
    #[error("series constant term is not a nonzero rational")]
    NotInvertible,
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}
