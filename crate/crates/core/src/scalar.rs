//! Scalar traits.

use std::fmt::{Debug, Display};

use num_integer::Integer;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// Exact signed integers: `i64`, `i128` and `BigInt`.
pub trait ExactInt:
    Integer + Signed + Clone + FromPrimitive + ToPrimitive + Debug + Display
{
}

impl<T> ExactInt for T where
    T: Integer + Signed + Clone + FromPrimitive + ToPrimitive + Debug + Display
{
}

/// Coefficients of rank vectors. Exact rationals in practice; `f64` works for
/// quick looks.
pub trait RankScalar: Num + Clone + FromPrimitive + Debug + PartialEq {}

impl<T> RankScalar for T where T: Num + Clone + FromPrimitive + Debug + PartialEq {}

/// `a ≡ b (mod n)`, where modulus 0 means integer equality.
pub fn congruent(a: i64, b: i64, n: u64) -> bool {
    if n == 0 {
        a == b
    } else {
        (a as i128 - b as i128).rem_euclid(n as i128) == 0
    }
}

pub(crate) fn from_i64<I: FromPrimitive>(x: i64) -> I {
    I::from_i64(x).expect("integer type holds i64")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modulus_zero_is_equality() {
        assert!(congruent(3, 3, 0));
        assert!(!congruent(3, 5, 0));
        assert!(congruent(3, 5, 2));
        assert!(congruent(-1, 1, 2));
        assert!(congruent(7, -11, 1));
    }
}
