use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::{Scalar, ScalarError};

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Integer binomial `C(n, k)` for `n >= 0`; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

/// `x (x-1) ... (x-k+1) / k!` over Q(T).
pub fn binomial_ring(x: &Scalar, k: u32) -> Scalar {
    if k == 0 {
        return Scalar::one();
    }
    if let Some(c) = x.as_constant() {
        let mut acc = BigRational::one();
        for j in 0..k {
            acc *= &c - BigRational::from_integer(BigInt::from(j));
        }
        return Scalar::from_rational(acc / BigRational::from_integer(factorial(k)));
    }
    let mut acc = Scalar::one();
    for j in 0..k {
        acc = &acc * &(x - &Scalar::from_int(j as i64));
    }
    acc.scale_rational(&BigRational::from_integer(factorial(k)).recip())
}

/// `Q_{m,l}(x) = l!/m! * prod_{k=l}^{m-1} (x + k)`.
pub fn q_coeff(m: u32, l: u32, x: &Scalar) -> Result<Scalar, ScalarError> {
    if l == 0 || l > m {
        return Err(ScalarError::InvalidIndex { m, l });
    }
    let mut acc = Scalar::one();
    for k in l..m {
        acc = &acc * &(x + &Scalar::from_int(k as i64));
    }
    let r = BigRational::new(factorial(l), factorial(m));
    Ok(acc.scale_rational(&r))
}
