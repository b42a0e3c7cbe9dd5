//! Exact scalars for the rank parameter `T`: rationals, polynomials in `T`
//! and reduced rational functions, plus ring-valued binomials.

mod combin;
mod parse;
mod poly;
mod scalar;
mod shift;

pub use combin::{binomial, binomial_ring, factorial, q_coeff};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use poly::Poly;
pub use scalar::Scalar;
pub use shift::ShiftExponent;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("pole at T = {0}")]
    Pole(BigRational),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid index pair (m, l) = ({m}, {l}); need 1 <= l <= m")]
    InvalidIndex { m: u32, l: u32 },
    #[error("parse error: {0}")]
    Parse(String),
}

/// Shorthand for an integer rational.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Shorthand for `p/q`.
pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}
