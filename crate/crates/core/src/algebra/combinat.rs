//! Integer combinatorics and rational shorthands.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// n!/(n-k)!, zero when k > n.
pub fn falling(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    ((n - k + 1)..=n).fold(BigInt::one(), |acc, i| acc * i)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    falling(n, k) / factorial(k)
}

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// 1/n! as a rational; the convention 1/(negative)! = 0 is applied by callers via `inv_factorial_signed`.
pub fn inv_factorial(n: u64) -> BigRational {
    BigRational::new(BigInt::one(), factorial(n))
}

/// 1/m! with 1/m! = 0 for m < 0.
pub fn inv_factorial_signed(m: i64) -> BigRational {
    if m < 0 {
        BigRational::zero()
    } else {
        inv_factorial(m as u64)
    }
}

pub fn sign(even: bool) -> BigRational {
    if even {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

/// (-1)^e as a rational.
pub fn neg_one_pow(e: u64) -> BigRational {
    sign(e.is_multiple_of(2))
}

pub fn is_positive(r: &BigRational) -> bool {
    r.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(falling(5, 2), BigInt::from(20));
        assert_eq!(falling(2, 3), BigInt::from(0));
        assert_eq!(binomial(6, 3), BigInt::from(20));
        assert_eq!(inv_factorial_signed(-1), BigRational::zero());
    }
}
