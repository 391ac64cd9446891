//! Word-sized prime fields F_p, p odd, p < 2^62.
//!
//! Elements store their residue and the prime; invariants: `v` is always
//! reduced to `[0, p)`. The interpolation job in the CLI crate keeps its own
//! Montgomery kernel for bulk elimination; this type is the general-purpose
//! path.

use super::{Field, FieldRand, FieldSqrt};
use crate::rng::SplitMix64;
use alloc::format;
use alloc::string::String;

/// Context for a word prime field (just the modulus today; kept as a struct
/// so the CLI can hand it around explicitly).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FpCtx {
    pub p: u64,
}

impl FpCtx {
    pub fn new(p: u64) -> Self {
        assert!(p > 2 && p % 2 == 1, "prime field modulus must be odd, got {}", p);
        assert!(p < (1u64 << 62), "modulus too large for word field");
        FpCtx { p }
    }

    pub fn el(&self, v: i64) -> Fp64 {
        Fp64::new(v, self.p)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub struct Fp64 {
    v: u64,
    p: u64,
}

impl core::fmt::Debug for Fp64 {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{} (mod {})", self.v, self.p)
    }
}

impl Fp64 {
    pub fn new(v: i64, p: u64) -> Self {
        let m = v.rem_euclid(p as i64) as u64;
        Fp64 { v: m, p }
    }

    pub fn from_u64(v: u64, p: u64) -> Self {
        Fp64 { v: v % p, p }
    }

    pub fn value(&self) -> u64 {
        self.v
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    fn mul_raw(a: u64, b: u64, p: u64) -> u64 {
        ((a as u128 * b as u128) % p as u128) as u64
    }

    /// Legendre symbol via Euler's criterion; 0 for zero.
    pub fn legendre(&self) -> i32 {
        if self.v == 0 {
            return 0;
        }
        let e = (self.p - 1) / 2;
        let r = self.pow_u(e);
        if r.v == 1 {
            1
        } else {
            -1
        }
    }
}

impl Field for Fp64 {
    fn zero_like(&self) -> Self {
        Fp64 { v: 0, p: self.p }
    }
    fn one_like(&self) -> Self {
        Fp64 { v: 1 % self.p, p: self.p }
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn add(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        let mut s = self.v + rhs.v;
        if s >= self.p {
            s -= self.p;
        }
        Fp64 { v: s, p: self.p }
    }
    fn sub(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        let s = if self.v >= rhs.v { self.v - rhs.v } else { self.v + self.p - rhs.v };
        Fp64 { v: s, p: self.p }
    }
    fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        Fp64 { v: Self::mul_raw(self.v, rhs.v, self.p), p: self.p }
    }
    fn neg(&self) -> Self {
        Fp64 { v: if self.v == 0 { 0 } else { self.p - self.v }, p: self.p }
    }
    fn inv(&self) -> Option<Self> {
        if self.v == 0 {
            None
        } else {
            Some(self.pow_u(self.p - 2))
        }
    }
    fn from_i64_like(&self, n: i64) -> Self {
        Fp64::new(n, self.p)
    }
    fn char_divides(&self, n: u64) -> bool {
        n % self.p == 0
    }
    fn render(&self) -> String {
        format!("{}", self.v)
    }
    fn cube_root(&self) -> Option<Self> {
        if self.v == 0 {
            return Some(*self);
        }
        if (self.p - 1) % 3 != 0 {
            // cubing is a bijection; invert the exponent
            let k = super::mod_inverse_u64(3, self.p - 1)?;
            return Some(self.pow_u(k));
        }
        None
    }
}

impl FieldRand for Fp64 {
    fn random_like(&self, rng: &mut SplitMix64) -> Self {
        Fp64 { v: rng.below(self.p), p: self.p }
    }
}

impl FieldSqrt for Fp64 {
    /// Tonelli-Shanks. Deterministic: the non-residue scan starts at 2.
    fn sqrt(&self) -> Option<Self> {
        let p = self.p;
        if self.v == 0 {
            return Some(*self);
        }
        if self.legendre() != 1 {
            return None;
        }
        if p % 4 == 3 {
            return Some(self.pow_u((p + 1) / 4));
        }
        // p = 1 mod 4: full Tonelli-Shanks.
        let mut q = p - 1;
        let mut s = 0u32;
        while q % 2 == 0 {
            q /= 2;
            s += 1;
        }
        let mut z = Fp64 { v: 2, p };
        while z.legendre() != -1 {
            z = Fp64 { v: z.v + 1, p };
        }
        let mut m = s;
        let mut c = z.pow_u(q);
        let mut t = self.pow_u(q);
        let mut r = self.pow_u((q + 1) / 2);
        while t.v != 1 {
            let mut i = 0u32;
            let mut t2 = t;
            while t2.v != 1 {
                t2 = t2.mul(&t2);
                i += 1;
                if i == m {
                    return None;
                }
            }
            let b = c.pow_u(1u64 << (m - i - 1));
            m = i;
            c = b.mul(&b);
            t = t.mul(&c);
            r = r.mul(&b);
        }
        Some(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_5_mod_29() {
        // exhaustive oracle: 11^2 = 121 = 5 mod 29, so the roots are {11, 18}
        let r = Fp64::new(5, 29).sqrt().unwrap();
        assert!(r.value() == 11 || r.value() == 18);
        assert_eq!(r.mul(&r).value(), 5);
    }

    #[test]
    fn sqrt_nonresidue() {
        // 2 is a non-residue mod 29 (exhaustive check in the oracle test below)
        assert!(Fp64::new(2, 29).sqrt().is_none());
    }

    #[test]
    fn sqrt_matches_exhaustive_search() {
        for v in 0..29 {
            let x = Fp64::new(v, 29);
            let squares: alloc::vec::Vec<u64> =
                (0..29).filter(|r| (r * r) % 29 == v as u64).map(|r| r).collect();
            match x.sqrt() {
                Some(r) => assert!(squares.contains(&r.value())),
                None => assert!(squares.is_empty()),
            }
        }
    }

    #[test]
    fn sqrt_p_1_mod_4() {
        // 10007 ≡ 3 mod 4; also exercise a prime ≡ 1 mod 4
        let p = 10009;
        assert_eq!(p % 4, 1);
        for v in [2i64, 3, 5, 100, 9999] {
            let x = Fp64::new(v, p);
            if let Some(r) = x.sqrt() {
                assert_eq!(r.mul(&r), x);
            }
        }
    }
}
