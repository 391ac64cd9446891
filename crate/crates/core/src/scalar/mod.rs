//! Exact coefficient domains: rationals, prime fields, quadratic extensions.
//!
//! All polynomial and matrix code is generic over [`Field`]. Elements carry
//! enough context (the prime, the radicand) to produce zeros and ones "like"
//! themselves, so runtime-modulus fields need no global state.

mod fp64;
mod fpbig;
mod quad;
pub mod rational;

pub use fp64::{Fp64, FpCtx};
pub use fpbig::FpBig;
pub use quad::Quad;
pub use rational::big_ratio;

use crate::rng::SplitMix64;
use alloc::string::String;

/// An exact field element. Operations take `&self`; the element itself is the
/// domain context (`zero_like`, `from_i64_like` build new values in the same
/// domain).
pub trait Field: Clone + PartialEq + core::fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// None exactly when `self` is zero (or, for composite quadratic
    /// extensions, a zero divisor; such domains are rejected at construction).
    fn inv(&self) -> Option<Self>;
    fn from_i64_like(&self, n: i64) -> Self;
    /// Does the field characteristic divide `n`? Always false in
    /// characteristic zero.
    fn char_divides(&self, n: u64) -> bool;
    /// Short human-readable form used in error messages and reports.
    fn render(&self) -> String;

    /// A cube root within the domain when one canonically exists (prime
    /// fields with p = 2 mod 3 have a unique one; rationals use exact integer
    /// roots). None otherwise.
    fn cube_root(&self) -> Option<Self> {
        None
    }

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.inv().expect("division by zero"))
    }

    /// Exact small rational `num/den` embedded into the domain. Panics if the
    /// characteristic divides `den`; callers guard with `char_divides`.
    fn from_ratio_like(&self, num: i64, den: u64) -> Self {
        assert!(den > 0);
        let d = self.from_i64_like(den as i64);
        self.from_i64_like(num)
            .mul(&d.inv().expect("characteristic divides a structure constant"))
    }

    fn pow_u(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Integer power, negative exponents via inversion.
    fn pow_i(&self, e: i64) -> Self {
        if e >= 0 {
            self.pow_u(e as u64)
        } else {
            self.inv().expect("inverting zero").pow_u(e.unsigned_abs())
        }
    }

    fn sum_of(items: &[Self]) -> Self {
        let mut acc = items[0].clone();
        for x in &items[1..] {
            acc = acc.add(x);
        }
        acc
    }
}

/// Domains that can draw uniform (or, for Q, small-height) random elements.
pub trait FieldRand: Field {
    fn random_like(&self, rng: &mut SplitMix64) -> Self;
}

/// Square roots inside the domain. `None` means "not a square here", which is
/// a branch signal (the caller may pass to a quadratic extension), not an
/// error.
pub trait FieldSqrt: Field {
    fn sqrt(&self) -> Option<Self>;
}

/// Modular inverse of a modulo m for word-size inputs; None when not coprime.
pub(crate) fn mod_inverse_u64(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}
