//! Binary forms and transvectants.
//!
//! Coefficients are stored leading-first: `c[0]` multiplies `z1^n` and `c[n]`
//! multiplies `z2^n`.
//!
//! Two transvectant normalizations coexist in the literature this code draws
//! on. `transvectant` carries the prefactor (n1-i)!(n2-i)!/(n1! n2!) coming
//! straight from the Cayley-operator formula; `transvectant_scaled` divides by
//! an extra i! and is the normalization under which the published tables of
//! joint invariants of octic/quartic pairs (and our frozen acceptance data)
//! are stated.

use crate::matrix::Matrix;
use crate::scalar::Field;
use alloc::vec;
use alloc::vec::Vec;

#[derive(Clone, Debug, PartialEq)]
pub struct BinaryForm<F: Field> {
    coeffs: Vec<F>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BinaryError {
    IndexOutOfRange,
    CharacteristicTooSmall,
}

impl core::fmt::Display for BinaryError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            BinaryError::IndexOutOfRange => write!(f, "transvectant index out of range"),
            BinaryError::CharacteristicTooSmall => {
                write!(f, "field characteristic divides a factorial denominator")
            }
        }
    }
}

impl<F: Field> BinaryForm<F> {
    pub fn new(coeffs: Vec<F>) -> Self {
        assert!(!coeffs.is_empty());
        BinaryForm { coeffs }
    }

    pub fn zero(degree: usize, ctx: &F) -> Self {
        BinaryForm { coeffs: vec![ctx.zero_like(); degree + 1] }
    }

    /// z1^n
    pub fn monomial_z1(degree: usize, ctx: &F) -> Self {
        let mut b = Self::zero(degree, ctx);
        b.coeffs[0] = ctx.one_like();
        b
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &F {
        &self.coeffs[k]
    }

    pub fn ctx(&self) -> &F {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn eval(&self, z1: &F, z2: &F) -> F {
        let n = self.degree();
        let mut out = self.ctx().zero_like();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = c.mul(&z1.pow_u((n - k) as u64)).mul(&z2.pow_u(k as u64));
            out = out.add(&term);
        }
        out
    }

    pub fn scale(&self, c: &F) -> Self {
        BinaryForm { coeffs: self.coeffs.iter().map(|x| x.mul(c)).collect() }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.degree(), rhs.degree());
        BinaryForm {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.degree(), rhs.degree());
        BinaryForm {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.degree() + rhs.degree();
        let zero = self.ctx().zero_like();
        let mut out = vec![zero; n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        BinaryForm { coeffs: out }
    }

    /// Substitution b(z . T) for a 2x2 matrix: z_i <- T[i][0] z1 + T[i][1] z2.
    /// Right action: acting by S then T equals acting by S*T.
    pub fn act(&self, t: &Matrix<F>) -> Self {
        assert_eq!((t.rows, t.cols), (2, 2));
        let n = self.degree();
        let l1 = BinaryForm::new(vec![t.at(0, 0).clone(), t.at(0, 1).clone()]);
        let l2 = BinaryForm::new(vec![t.at(1, 0).clone(), t.at(1, 1).clone()]);
        // powers of the two linear forms
        let one = BinaryForm::new(vec![self.ctx().one_like()]);
        let mut p1 = vec![one.clone()];
        let mut p2 = vec![one];
        for k in 1..=n {
            p1.push(p1[k - 1].mul(&l1));
            p2.push(p2[k - 1].mul(&l2));
        }
        let mut out = BinaryForm::zero(n, self.ctx());
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = p1[n - k].mul(&p2[k]).scale(c);
            // term has degree n already
            out = out.add(&term);
        }
        out
    }

    /// d/dz1^a d/dz2^b applied to the form.
    pub fn derivative(&self, a: usize, b: usize) -> Self {
        let n = self.degree();
        if a + b > n {
            return BinaryForm::zero(0, self.ctx());
        }
        let m = n - a - b;
        let mut out = Vec::with_capacity(m + 1);
        for k in 0..=m {
            // source coefficient of z1^(n-k-a... ) -> index j with n-j >= ...
            // coefficient index j in source contributes to index k = j - b
            let j = k + b;
            let e1 = n - j; // z1 exponent in source
            let e2 = j;
            // falling factorials e1 * (e1-1) * ... (a terms), same for z2
            let mut mult = 1i64;
            for t in 0..a {
                mult *= (e1 - t) as i64;
            }
            for t in 0..b {
                mult *= (e2 - t) as i64;
            }
            out.push(self.coeffs[j].mul(&self.ctx().from_i64_like(mult)));
        }
        BinaryForm { coeffs: out }
    }

    /// Univariate gcd of the dehomogenizations (z2 = 1), returned as the
    /// degree of the gcd and its coefficient vector, leading-first. Used for
    /// repeated-root tests; roots at (1:0) are handled by callers via leading
    /// coefficient vanishing.
    pub fn gcd_dehom(&self, rhs: &Self) -> Vec<F> {
        let to_poly = |b: &Self| -> Vec<F> {
            // ascending in z1: p[k] = coeff of z1^k, i.e. reversed storage
            let mut v: Vec<F> = b.coeffs.iter().rev().cloned().collect();
            while v.len() > 1 && v.last().unwrap().is_zero() {
                v.pop();
            }
            v
        };
        let mut a = to_poly(self);
        let mut b = to_poly(rhs);
        while !(b.len() == 1 && b[0].is_zero()) {
            let r = poly_rem(&a, &b, self.ctx());
            a = b;
            b = r;
        }
        // normalize monic
        if let Some(lead) = a.last() {
            if !lead.is_zero() {
                let inv = lead.inv().unwrap();
                for c in a.iter_mut() {
                    *c = c.mul(&inv);
                }
            }
        }
        a
    }
}

/// Remainder of ascending-coefficient polynomials a mod b.
fn poly_rem<F: Field>(a: &[F], b: &[F], ctx: &F) -> Vec<F> {
    let mut r: Vec<F> = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = b[db].inv().expect("nonzero leading coefficient");
    while r.len() - 1 >= db && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        let factor = r[dr].mul(&lead_inv);
        if !factor.is_zero() {
            for k in 0..=db {
                let idx = dr - db + k;
                let sub = factor.mul(&b[k]);
                r[idx] = r[idx].sub(&sub);
            }
        }
        r.pop();
        while r.len() > 1 && r.last().unwrap().is_zero() {
            r.pop();
        }
        if r.is_empty() {
            r.push(ctx.zero_like());
        }
    }
    if r.is_empty() {
        r.push(ctx.zero_like());
    }
    r
}

fn factorial_ratio<F: Field>(ctx: &F, n: usize, i: usize) -> Result<F, BinaryError> {
    // (n-i)!/n! = 1 / (n * (n-1) * ... * (n-i+1))
    let den = ctx.from_i64_like(1);
    let mut den = den;
    for t in 0..i {
        let factor = ctx.from_i64_like((n - t) as i64);
        if factor.is_zero() {
            return Err(BinaryError::CharacteristicTooSmall);
        }
        den = den.mul(&factor);
    }
    Ok(den.inv().ok_or(BinaryError::CharacteristicTooSmall)?)
}

fn binom(n: usize, k: usize) -> i64 {
    let mut acc = 1i64;
    for t in 0..k {
        acc = acc * (n - t) as i64 / (t + 1) as i64;
    }
    acc
}

/// Transvectant of index i in the Cayley-operator normalization:
/// ((n1-i)!/n1!) ((n2-i)!/n2!) sum_k (-1)^k C(i,k) d^i b1/dz1^{i-k}dz2^k *
/// d^i b2/dz1^k dz2^{i-k}.
pub fn transvectant<F: Field>(
    b1: &BinaryForm<F>,
    b2: &BinaryForm<F>,
    i: usize,
) -> Result<BinaryForm<F>, BinaryError> {
    let n1 = b1.degree();
    let n2 = b2.degree();
    if i > n1.min(n2) {
        return Err(BinaryError::IndexOutOfRange);
    }
    let ctx = b1.ctx();
    let pref = factorial_ratio(ctx, n1, i)?.mul(&factorial_ratio(ctx, n2, i)?);
    let mut acc = BinaryForm::zero(n1 + n2 - 2 * i, ctx);
    for k in 0..=i {
        let d1 = b1.derivative(i - k, k);
        let d2 = b2.derivative(k, i - k);
        let c = binom(i, k) * if k % 2 == 0 { 1 } else { -1 };
        let term = d1.mul(&d2).scale(&ctx.from_i64_like(c));
        acc = acc.add(&term);
    }
    Ok(acc.scale(&pref))
}

/// Table normalization: the Cayley form divided by i!. The published joint
/// invariant tables and all frozen acceptance values use this scaling.
pub fn transvectant_scaled<F: Field>(
    b1: &BinaryForm<F>,
    b2: &BinaryForm<F>,
    i: usize,
) -> Result<BinaryForm<F>, BinaryError> {
    let t = transvectant(b1, b2, i)?;
    let ctx = b1.ctx();
    let mut fact = ctx.one_like();
    for k in 1..=i {
        fact = fact.mul(&ctx.from_i64_like(k as i64));
    }
    let inv = fact.inv().ok_or(BinaryError::CharacteristicTooSmall)?;
    Ok(t.scale(&inv))
}
