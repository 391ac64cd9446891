//! `Field` instance for arbitrary-precision rationals.
//!
//! `BigRational` already maintains the invariants we need: values are stored
//! in lowest terms with a positive denominator.

use super::{Field, FieldRand, FieldSqrt};
use crate::rng::SplitMix64;
use alloc::string::{String, ToString};
use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

impl Field for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_i64_like(&self, n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn char_divides(&self, _n: u64) -> bool {
        false
    }
    fn render(&self) -> String {
        if self.denom().is_one() {
            self.numer().to_string()
        } else {
            self.to_string()
        }
    }
    fn cube_root(&self) -> Option<Self> {
        let num = self.numer().cbrt();
        let den = self.denom().cbrt();
        if &(&num * &num * &num) == self.numer() && &(&den * &den * &den) == self.denom() {
            Some(BigRational::new(num, den))
        } else {
            None
        }
    }
}

impl FieldRand for BigRational {
    /// Small integers: adequate for randomized identity checking over Q while
    /// keeping intermediate heights sane.
    fn random_like(&self, rng: &mut SplitMix64) -> Self {
        BigRational::from_integer(BigInt::from(rng.small_int(20)))
    }
}

impl FieldSqrt for BigRational {
    fn sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let num = self.numer().sqrt();
        let den = self.denom().sqrt();
        if &(&num * &num) == self.numer() && &(&den * &den) == self.denom() {
            Some(BigRational::new(num, den))
        } else {
            None
        }
    }
}

/// Convenience constructor used throughout tests and frozen tables.
pub fn big_ratio(num: i64, den: i64) -> BigRational {
    assert!(den != 0);
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[allow(dead_code)]
fn sign_name(s: Sign) -> &'static str {
    match s {
        Sign::Minus => "-",
        Sign::NoSign => "0",
        Sign::Plus => "+",
    }
}
