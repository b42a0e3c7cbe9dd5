use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::Scalar;

/// Exponent `a + b*T` of a shifted power of `∂`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Default)]
pub struct ShiftExponent {
    pub a: i64,
    pub b: i64,
}

impl ShiftExponent {
    pub const ZERO: ShiftExponent = ShiftExponent { a: 0, b: 0 };

    pub fn new(a: i64, b: i64) -> Self {
        ShiftExponent { a, b }
    }

    pub fn int(a: i64) -> Self {
        ShiftExponent { a, b: 0 }
    }

    /// The exponent `T`.
    pub fn t() -> Self {
        ShiftExponent { a: 0, b: 1 }
    }

    pub fn is_integral(&self) -> bool {
        self.b == 0
    }

    pub fn to_scalar(&self) -> Scalar {
        &Scalar::from_int(self.a) + &(&Scalar::from_int(self.b) * &Scalar::t())
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        BigRational::from_integer(BigInt::from(self.a)) + t * BigRational::from_integer(BigInt::from(self.b))
    }
}

impl From<ShiftExponent> for Scalar {
    fn from(s: ShiftExponent) -> Scalar {
        s.to_scalar()
    }
}

impl From<i64> for ShiftExponent {
    fn from(a: i64) -> Self {
        ShiftExponent::int(a)
    }
}

impl Add for ShiftExponent {
    type Output = ShiftExponent;
    fn add(self, o: ShiftExponent) -> ShiftExponent {
        ShiftExponent { a: self.a + o.a, b: self.b + o.b }
    }
}

impl Sub for ShiftExponent {
    type Output = ShiftExponent;
    fn sub(self, o: ShiftExponent) -> ShiftExponent {
        ShiftExponent { a: self.a - o.a, b: self.b - o.b }
    }
}

impl Add<i64> for ShiftExponent {
    type Output = ShiftExponent;
    fn add(self, o: i64) -> ShiftExponent {
        ShiftExponent { a: self.a + o, b: self.b }
    }
}

impl Sub<i64> for ShiftExponent {
    type Output = ShiftExponent;
    fn sub(self, o: i64) -> ShiftExponent {
        ShiftExponent { a: self.a - o, b: self.b }
    }
}

impl Neg for ShiftExponent {
    type Output = ShiftExponent;
    fn neg(self) -> ShiftExponent {
        ShiftExponent { a: -self.a, b: -self.b }
    }
}

impl fmt::Display for ShiftExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = match self.b {
            0 => String::new(),
            1 => "T".to_string(),
            -1 => "-T".to_string(),
            b => format!("{}T", b),
        };
        match (self.b, self.a) {
            (0, a) => write!(f, "{}", a),
            (_, 0) => write!(f, "{}", t),
            (_, a) if a > 0 => write!(f, "{}+{}", t, a),
            (_, a) => write!(f, "{}{}", t, a),
        }
    }
}
