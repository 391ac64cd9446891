//! Quadratic extensions K[r]/(r^2 - s), stored as (x, y, s) for x + y*r.
//!
//! Used when normalization or conic parametrization needs a square root that
//! the base field lacks; s is then a non-square, so the algebra is a field.

use super::{Field, FieldRand};
use crate::rng::SplitMix64;
use alloc::format;
use alloc::string::String;

#[derive(Clone, PartialEq)]
pub struct Quad<F: Field> {
    pub x: F,
    pub y: F,
    pub s: F,
}

impl<F: Field> core::fmt::Debug for Quad<F> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "({:?}) + ({:?})*r  [r^2 = {:?}]", self.x, self.y, self.s)
    }
}

impl<F: Field> Quad<F> {
    pub fn new(x: F, y: F, s: F) -> Self {
        Quad { x, y, s }
    }

    /// Embed a base element.
    pub fn base(x: F, s: &F) -> Self {
        let y = x.zero_like();
        Quad { x, y, s: s.clone() }
    }

    /// The generator r itself.
    pub fn gen(s: &F) -> Self {
        Quad { x: s.zero_like(), y: s.one_like(), s: s.clone() }
    }

    /// Galois conjugate: r -> -r.
    pub fn conj(&self) -> Self {
        Quad { x: self.x.clone(), y: self.y.neg(), s: self.s.clone() }
    }

    /// Norm x^2 - s*y^2 down to the base field.
    pub fn norm(&self) -> F {
        self.x.mul(&self.x).sub(&self.s.mul(&self.y.mul(&self.y)))
    }

    pub fn in_base(&self) -> bool {
        self.y.is_zero()
    }

    /// Base-field part, if the element lies in the base field.
    pub fn to_base(&self) -> Option<F> {
        if self.in_base() {
            Some(self.x.clone())
        } else {
            None
        }
    }
}

impl<F: Field> Field for Quad<F> {
    fn zero_like(&self) -> Self {
        Quad { x: self.x.zero_like(), y: self.x.zero_like(), s: self.s.clone() }
    }
    fn one_like(&self) -> Self {
        Quad { x: self.x.one_like(), y: self.x.zero_like(), s: self.s.clone() }
    }
    fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        Quad { x: self.x.add(&rhs.x), y: self.y.add(&rhs.y), s: self.s.clone() }
    }
    fn sub(&self, rhs: &Self) -> Self {
        Quad { x: self.x.sub(&rhs.x), y: self.y.sub(&rhs.y), s: self.s.clone() }
    }
    fn mul(&self, rhs: &Self) -> Self {
        // (x1 + y1 r)(x2 + y2 r) = x1x2 + s y1y2 + (x1y2 + x2y1) r
        let x = self.x.mul(&rhs.x).add(&self.s.mul(&self.y.mul(&rhs.y)));
        let y = self.x.mul(&rhs.y).add(&self.y.mul(&rhs.x));
        Quad { x, y, s: self.s.clone() }
    }
    fn neg(&self) -> Self {
        Quad { x: self.x.neg(), y: self.y.neg(), s: self.s.clone() }
    }
    fn inv(&self) -> Option<Self> {
        let n = self.norm();
        let ninv = n.inv()?;
        let c = self.conj();
        Some(Quad { x: c.x.mul(&ninv), y: c.y.mul(&ninv), s: self.s.clone() })
    }
    fn from_i64_like(&self, n: i64) -> Self {
        Quad { x: self.x.from_i64_like(n), y: self.x.zero_like(), s: self.s.clone() }
    }
    fn char_divides(&self, n: u64) -> bool {
        self.x.char_divides(n)
    }
    fn render(&self) -> String {
        if self.y.is_zero() {
            self.x.render()
        } else {
            format!("{}+{}*r", self.x.render(), self.y.render())
        }
    }
}

impl<F: FieldRand> FieldRand for Quad<F> {
    fn random_like(&self, rng: &mut SplitMix64) -> Self {
        Quad {
            x: self.x.random_like(rng),
            y: self.x.random_like(rng),
            s: self.s.clone(),
        }
    }
}
