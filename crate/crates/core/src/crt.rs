//! Chinese remaindering and rational number reconstruction.

use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CrtError {
    ModuliNotCoprime,
    Empty,
}

impl core::fmt::Display for CrtError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            CrtError::ModuliNotCoprime => write!(f, "CRT moduli are not pairwise coprime"),
            CrtError::Empty => write!(f, "no residues given"),
        }
    }
}

/// Combine residues (v_i mod m_i) into the unique representative modulo the
/// product. Returns (value, product).
pub fn crt_combine(residues: &[(BigInt, BigInt)]) -> Result<(BigInt, BigInt), CrtError> {
    let mut iter = residues.iter();
    let (v0, m0) = iter.next().ok_or(CrtError::Empty)?;
    let mut acc = v0.mod_floor(m0);
    let mut modulus = m0.clone();
    for (v, m) in iter {
        let g = modulus.gcd(m);
        if !g.is_one() {
            return Err(CrtError::ModuliNotCoprime);
        }
        // acc + modulus * t = v (mod m)  =>  t = (v - acc) * modulus^-1 (mod m)
        let minv = mod_inverse(&modulus, m).ok_or(CrtError::ModuliNotCoprime)?;
        let t = ((v - &acc) * minv).mod_floor(m);
        acc += &modulus * t;
        modulus *= m;
        acc = acc.mod_floor(&modulus);
    }
    Ok((acc, modulus))
}

pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Recover n/d from x mod m with |n|, d <= sqrt(m/2), gcd(d, m) = 1.
/// Half-extended Euclid; `None` signals that more primes are needed.
pub fn rational_reconstruct(x: &BigInt, m: &BigInt) -> Option<BigRational> {
    assert!(m > &BigInt::one());
    let bound = (m / BigInt::from(2)).sqrt();
    let mut r0 = m.clone();
    let mut r1 = x.mod_floor(m);
    let mut t0 = BigInt::zero();
    let mut t1 = BigInt::one();
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    // candidate n/d = r1/t1
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    let (num, den) = if t1.is_negative() {
        (-&r1, -&t1)
    } else {
        (r1.clone(), t1.clone())
    };
    if den.is_zero() || !den.gcd(m).is_one() {
        return None;
    }
    // certify: num = den * x (mod m)
    if (&num - &den * x).mod_floor(m) != BigInt::zero() {
        return None;
    }
    if !num.gcd(&den).is_one() && !num.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

/// Reduce a rational into F_p residue form; None when p divides the
/// denominator.
pub fn rational_mod(q: &BigRational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let den = q.denom().mod_floor(&pb);
    if den.is_zero() {
        return None;
    }
    let dinv = mod_inverse(&den, &pb)?;
    let num = q.numer().mod_floor(&pb);
    let r = (num * dinv).mod_floor(&pb);
    let digits = r.to_biguint()?.to_u64_digits();
    Some(digits.first().copied().unwrap_or(0))
}

/// Deterministic Miller-Rabin, valid for all u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = 1u128;
        let mut base = a as u128 % n as u128;
        let mut e = d;
        while e > 0 {
            if e & 1 == 1 {
                x = x * base % n as u128;
            }
            base = base * base % n as u128;
            e >>= 1;
        }
        if x == 1 || x == (n - 1) as u128 {
            continue;
        }
        for _ in 0..s - 1 {
            x = x * x % n as u128;
            if x == (n - 1) as u128 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The first `count` primes at or above `start`.
pub fn primes_from(start: u64, count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut n = if start <= 2 {
        2
    } else {
        start | 1
    };
    while out.len() < count {
        if is_prime_u64(n) {
            out.push(n);
        }
        n += if n == 2 { 1 } else { 2 };
    }
    out
}
