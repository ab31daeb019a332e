//! Scalar traits shared by the polynomial, matrix and quaternion code.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A commutative ring element.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    fn from_i64(n: i64) -> Self;

    /// Exact zero test for exact types; tolerance-free for floats as well.
    fn is_exact() -> bool;
}

/// A scalar with division.
pub trait Field: Scalar + Div<Output = Self> {}

impl Scalar for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn is_exact() -> bool {
        true
    }
}
impl Field for BigRational {}

impl Scalar for BigInt {
    fn from_i64(n: i64) -> Self {
        BigInt::from(n)
    }
    fn is_exact() -> bool {
        true
    }
}

impl Scalar for i64 {
    fn from_i64(n: i64) -> Self {
        n
    }
    fn is_exact() -> bool {
        true
    }
}

impl Scalar for i128 {
    fn from_i64(n: i64) -> Self {
        n as i128
    }
    fn is_exact() -> bool {
        true
    }
}

impl Scalar for f64 {
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn is_exact() -> bool {
        false
    }
}
impl Field for f64 {}

impl Scalar for Complex64 {
    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn is_exact() -> bool {
        false
    }
}
impl Field for Complex64 {}
