//! Prime fields with arbitrary-precision modulus (50-digit interpolation
//! demo primes and beyond).

use super::{Field, FieldRand, FieldSqrt};
use crate::rng::SplitMix64;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

#[derive(Clone, PartialEq, Eq)]
pub struct FpBig {
    v: BigUint,
    p: Arc<BigUint>,
}

impl core::fmt::Debug for FpBig {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{} (mod {})", self.v, self.p)
    }
}

impl FpBig {
    pub fn new(v: BigInt, p: Arc<BigUint>) -> Self {
        let pi = BigInt::from((*p).clone());
        let m = v.mod_floor(&pi);
        FpBig { v: m.to_biguint().expect("mod_floor yields nonneg"), p }
    }

    pub fn from_u64(v: u64, p: Arc<BigUint>) -> Self {
        let vv = BigUint::from(v) % &*p;
        FpBig { v: vv, p }
    }

    pub fn value(&self) -> &BigUint {
        &self.v
    }

    pub fn prime(&self) -> &Arc<BigUint> {
        &self.p
    }

    fn pow_big(&self, e: &BigUint) -> Self {
        FpBig { v: self.v.modpow(e, &self.p), p: self.p.clone() }
    }

    pub fn legendre(&self) -> i32 {
        if self.v.is_zero() {
            return 0;
        }
        let e = (&*self.p - 1u32) >> 1;
        let r = self.v.modpow(&e, &self.p);
        if r.is_one() {
            1
        } else {
            -1
        }
    }
}

impl Field for FpBig {
    fn zero_like(&self) -> Self {
        FpBig { v: BigUint::zero(), p: self.p.clone() }
    }
    fn one_like(&self) -> Self {
        FpBig { v: BigUint::one() % &*self.p, p: self.p.clone() }
    }
    fn is_zero(&self) -> bool {
        self.v.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        let mut s = &self.v + &rhs.v;
        if s >= *self.p {
            s -= &*self.p;
        }
        FpBig { v: s, p: self.p.clone() }
    }
    fn sub(&self, rhs: &Self) -> Self {
        let s = if self.v >= rhs.v {
            &self.v - &rhs.v
        } else {
            &*self.p - &rhs.v + &self.v
        };
        FpBig { v: s, p: self.p.clone() }
    }
    fn mul(&self, rhs: &Self) -> Self {
        FpBig { v: (&self.v * &rhs.v) % &*self.p, p: self.p.clone() }
    }
    fn neg(&self) -> Self {
        if self.v.is_zero() {
            self.clone()
        } else {
            FpBig { v: &*self.p - &self.v, p: self.p.clone() }
        }
    }
    fn inv(&self) -> Option<Self> {
        if self.v.is_zero() {
            None
        } else {
            let e = &*self.p - 2u32;
            Some(self.pow_big(&e))
        }
    }
    fn from_i64_like(&self, n: i64) -> Self {
        FpBig::new(BigInt::from(n), self.p.clone())
    }
    fn char_divides(&self, n: u64) -> bool {
        (BigUint::from(n) % &*self.p).is_zero()
    }
    fn render(&self) -> String {
        self.v.to_string()
    }
    fn cube_root(&self) -> Option<Self> {
        use num_traits::Zero as _;
        if self.v.is_zero() {
            return Some(self.clone());
        }
        let pm1 = &*self.p - 1u32;
        if (&pm1 % 3u32).is_zero() {
            return None;
        }
        // inverse of 3 mod p-1
        let three = BigUint::from(3u32);
        let inv = crate::crt::mod_inverse(
            &BigInt::from(three),
            &BigInt::from(pm1.clone()),
        )?;
        let e = inv.to_biguint()?;
        Some(self.pow_big(&e))
    }
}

impl FieldRand for FpBig {
    fn random_like(&self, rng: &mut SplitMix64) -> Self {
        // Stack 64-bit words up to the modulus width, then reduce; the slight
        // nonuniformity (< 2^-64) is irrelevant for sampling.
        let words = (self.p.bits() as usize + 63) / 64 + 1;
        let mut v = BigUint::zero();
        for _ in 0..words {
            v = (v << 64) + BigUint::from(rng.next_u64());
        }
        FpBig { v: v % &*self.p, p: self.p.clone() }
    }
}

impl FieldSqrt for FpBig {
    fn sqrt(&self) -> Option<Self> {
        if self.v.is_zero() {
            return Some(self.clone());
        }
        if self.legendre() != 1 {
            return None;
        }
        let p = &*self.p;
        if (p % 4u32) == BigUint::from(3u32) {
            let e = (p + 1u32) >> 2;
            return Some(self.pow_big(&e));
        }
        let mut q = p - 1u32;
        let mut s = 0u64;
        while (&q % 2u32).is_zero() {
            q >>= 1;
            s += 1;
        }
        let mut zv = BigUint::from(2u32);
        loop {
            let z = FpBig { v: zv.clone() % p, p: self.p.clone() };
            if z.legendre() == -1 {
                break;
            }
            zv += 1u32;
        }
        let z = FpBig { v: zv, p: self.p.clone() };
        let mut m = s;
        let mut c = z.pow_big(&q);
        let mut t = self.pow_big(&q);
        let one = self.one_like();
        let mut r = self.pow_big(&((&q + 1u32) >> 1));
        while t != one {
            let mut i = 0u64;
            let mut t2 = t.clone();
            while t2 != one {
                t2 = t2.mul(&t2);
                i += 1;
                if i == m {
                    return None;
                }
            }
            let mut b = c.clone();
            for _ in 0..(m - i - 1) {
                b = b.mul(&b);
            }
            m = i;
            c = b.mul(&b);
            t = t.mul(&c);
            r = r.mul(&b);
        }
        Some(r)
    }
}
